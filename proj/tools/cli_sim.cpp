#include <sstream>

#include <json.hpp>

#include "cli_common.hpp"
#include "symca/encodings.hpp"
#include "symca/io.hpp"

namespace cli {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << v;
    return os.str();
}

}  // namespace

void add_sim_commands(CLI::App& app, Globals& g) {
    {
        struct Opts {
            std::string rule;
            symca::RescaleParams p;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand("rescale", "Rescaled rule <m, t, z>: pack m-blocks, run t steps, shift by z");
        sub->add_option("--rule", o->rule, "Rule file")->required();
        sub->add_option("--m", o->p.m, "Block size")->check(CLI::PositiveNumber);
        sub->add_option("--t", o->p.t, "Steps per rescaled step")->check(CLI::PositiveNumber);
        sub->add_option("--z", o->p.z, "Shift in cells");
        on_run(sub, g, [o, &g] {
            const auto r = symca::rescale_rule(load_rule(o->rule), o->p);
            if (!r.is_dense()) throw Failure("rescaled table too large to write; use smaller m or t");
            emit(g, symca::serialize_rule(r));
        });
    }
    {
        struct Opts {
            std::string b, a;
            std::uint64_t budget = symca::kDefaultNodeBudget;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand("check-sub", "Search an injective state map making B a sub-automaton of A");
        sub->add_option("--b", o->b, "Simulated rule file")->required();
        sub->add_option("--a", o->a, "Simulating rule file")->required();
        sub->add_option("--budget", o->budget, "Search node budget");
        on_run(sub, g, [o, &g] {
            const auto res = symca::find_subautomaton(load_rule(o->b), load_rule(o->a), o->budget);
            if (res.status == symca::SearchStatus::Inconclusive)
                throw symca::Error(symca::ErrorKind::Inconclusive,
                                   "node budget " + std::to_string(o->budget) + " spent without a decision");
            if (res.status == symca::SearchStatus::None) {
                emit(g, "none\n");
                return;
            }
            emit(g, "phi " + join(res.phi, ' ') + '\n');
        });
    }
    {
        struct Opts {
            std::string b, a;
            std::optional<int> max;
            symca::SimBounds bounds;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand(
            "check-sim", "Search the cheapest rescaling witness (m1,t1,z1,m2,t2,z2,phi) that A simulates B");
        sub->add_option("--b", o->b, "Simulated rule file")->required();
        sub->add_option("--a", o->a, "Simulating rule file")->required();
        sub->add_option("--max", o->max, "Bound for every m, t and |z| at once");
        sub->add_option("--m1", o->bounds.m1, "Bound on m1");
        sub->add_option("--m2", o->bounds.m2, "Bound on m2");
        sub->add_option("--t1", o->bounds.t1, "Bound on t1");
        sub->add_option("--t2", o->bounds.t2, "Bound on t2");
        sub->add_option("--z1", o->bounds.z1, "Bound on |z1|");
        sub->add_option("--z2", o->bounds.z2, "Bound on |z2|");
        sub->add_option("--budget", o->bounds.node_budget, "Node budget per probe");
        on_run(sub, g, [o, &g] {
            auto bounds = o->bounds;
            if (o->max) bounds.m1 = bounds.m2 = bounds.t1 = bounds.t2 = *o->max, bounds.z1 = bounds.z2 = *o->max;
            bounds.seed = g.seed;
            const auto res = symca::search_simulation(load_rule(o->b), load_rule(o->a), bounds);
            if (res.status == symca::SearchStatus::Inconclusive)
                throw symca::Error(symca::ErrorKind::Inconclusive,
                                   "a probe ran out of budget before any witness was found (" +
                                       std::to_string(res.probes) + " probes)");
            if (res.status == symca::SearchStatus::None) {
                emit(g, "none within bounds\n");
                return;
            }
            emit(g, symca::serialize_witness(*res.witness));
        });
    }
    {
        struct Opts {
            std::string rule, kind = "set";
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand(
            "encode", "Set encoding (labels mod k+2) or captive set encoding (libraries, labels mod 2k-1) of a rule");
        sub->add_option("--rule", o->rule, "Rule file")->required();
        sub->add_option("--kind", o->kind, "Encoding")->check(CLI::IsMember({"set", "kset"}));
        on_run(sub, g, [o, &g] {
            const auto source = load_rule(o->rule);
            nlohmann::json meta;
            meta["source_hash"] = hex(fnv1a(symca::serialize_rule(source)));
            meta["encoding"] = o->kind;
            meta["source_n"] = source.n();
            meta["source_k"] = source.k();
            symca::Rule encoded = source;
            if (symca::parse_encoding_kind(o->kind) == symca::EncodingKind::Set) {
                const auto enc = symca::encode_set(source);
                meta["labels"] = enc.labels();
                meta["blank"] = enc.blank();
                encoded = enc.encoded;
            } else {
                const auto enc = symca::encode_kset(source);
                meta["labels"] = enc.period();
                meta["library_block"] = enc.block();
                encoded = enc.encoded;
            }
            meta["n"] = encoded.n();
            meta["k"] = encoded.k();
            meta["dense"] = encoded.is_dense();
            std::string text = "meta " + meta.dump() + '\n';
            if (encoded.is_dense()) text += symca::serialize_rule(encoded);
            emit(g, text);
        });
    }
    {
        struct Opts {
            std::string rule, kind = "set";
            int trials = 10, steps = 8;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand(
            "verify-encoding", "Check that the encoded rule reproduces source traces from legal configurations");
        sub->add_option("--rule", o->rule, "Rule file")->required();
        sub->add_option("--kind", o->kind, "Encoding")->check(CLI::IsMember({"set", "kset"}));
        sub->add_option("--trials", o->trials, "Random source configurations")->check(CLI::PositiveNumber);
        sub->add_option("--steps", o->steps, "Simulated source steps")->check(CLI::NonNegativeNumber);
        on_run(sub, g, [o, &g] {
            const auto rep = symca::verify_encoding_simulation(load_rule(o->rule), symca::parse_encoding_kind(o->kind),
                                                               o->trials, o->steps, g.seed);
            std::ostringstream os;
            os << "trials " << rep.trials << "\npassed " << rep.passed << "\nfamily_ok " << rep.family_ok
               << "\ncaptive_ok " << rep.captive_ok << "\nwitness_ok " << rep.witness_ok << "\nwindows "
               << rep.windows_checked << '\n';
            for (const auto& f : rep.failures) os << "failure " << f << '\n';
            emit(g, os.str());
            if (!rep.pass()) throw Failure("encoding verification failed");
        });
    }
}

}  // namespace cli
