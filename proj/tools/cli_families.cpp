#include <random>
#include <sstream>

#include "cli_common.hpp"
#include "symca/family.hpp"
#include "symca/io.hpp"

namespace cli {

namespace {

struct SizeOpts {
    std::string family = "all";
    std::uint64_t n = 2;
    int k = 2;
};

void add_size(CLI::App* sub, SizeOpts& o) {
    sub->add_option("--family", o.family, "Family: all, ms, set, tot, ss, k, kms, kset, ktot, oms:K', oset:K', otot:K', k+<family>")
        ->required();
    sub->add_option("--n", o.n, "Number of states")->required()->check(CLI::PositiveNumber);
    sub->add_option("--k", o.k, "Neighbourhood size")->required()->check(CLI::PositiveNumber);
}

}  // namespace

void add_family_commands(CLI::App& app, Globals& g) {
    {
        auto rule = std::make_shared<std::string>();
        auto* sub = app.add_subcommand("classify", "List the symmetry families (MS, SET, TOT, SS, K, KMS, KSET) a rule belongs to");
        sub->add_option("--rule", *rule, "Rule file")->required();
        on_run(sub, g, [rule, &g] {
            const auto r = load_rule(*rule);
            std::string passed;
            for (const char* name : {"ms", "set", "tot", "ss", "k", "kms", "kset"}) {
                const auto spec = symca::FamilySpec::parse(name);
                if (symca::is_member(r, spec)) {
                    if (!passed.empty()) passed += ' ';
                    for (const char* c = name; *c; ++c) passed += static_cast<char>(std::toupper(*c));
                }
            }
            emit(g, (passed.empty() ? std::string("none") : passed) + '\n');
        });
    }
    {
        auto o = std::make_shared<SizeOpts>();
        auto* sub = app.add_subcommand("count", "Exact size of a symmetry family at (n, k)");
        add_size(sub, *o);
        on_run(sub, g, [o, &g] {
            const auto c = symca::count_family(symca::FamilySpec::parse(o->family), o->n, o->k);
            emit(g, c.str() + '\n');
        });
    }
    {
        auto o = std::make_shared<SizeOpts>();
        auto limit = std::make_shared<std::uint64_t>(1000);
        auto* sub = app.add_subcommand("enumerate", "List every member of a family, lexicographically over per-class choices");
        add_size(sub, *o);
        sub->add_option("--limit", *limit, "Refuse families with more members than this");
        on_run(sub, g, [o, limit, &g] {
            const auto spec = symca::FamilySpec::parse(o->family);
            std::ostringstream os;
            std::uint64_t i = 0;
            if (g.csv()) os << "index,table\n";
            symca::for_each_member(spec, o->n, o->k, [&](const symca::Rule& r) {
                if (g.csv()) {
                    os << i << ',' << join(r.table(), ' ') << '\n';
                } else {
                    os << symca::serialize_rule(r) << '\n';
                }
                ++i;
            }, *limit);
            emit(g, os.str());
        });
    }
    {
        auto o = std::make_shared<SizeOpts>();
        auto* sub = app.add_subcommand("sample", "Uniform member of a family, deterministic in --seed");
        add_size(sub, *o);
        on_run(sub, g, [o, &g] {
            const auto r = symca::sample_rule(symca::FamilySpec::parse(o->family), o->n, o->k, g.seed);
            emit(g, symca::serialize_rule(r));
        });
    }
    {
        struct Opts {
            std::string rule, init;
            std::size_t period = 0, steps = 10;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand("evolve", "Space-time trace of a rule on a periodic configuration");
        sub->add_option("--rule", o->rule, "Rule file")->required();
        auto* init = sub->add_option("--init", o->init, "Initial period word, e.g. 0110 or 0,1,12");
        sub->add_option("--random", o->period, "Random initial configuration of this period (uses --seed)")
            ->excludes(init);
        sub->add_option("--steps", o->steps, "Number of steps");
        on_run(sub, g, [o, &g] {
            const auto r = load_rule(o->rule);
            symca::Word w;
            if (!o->init.empty()) {
                w = parse_word(o->init);
            } else {
                if (o->period == 0) throw Failure("evolve needs --init or --random");
                std::mt19937_64 rng(g.seed);
                for (std::size_t i = 0; i < o->period; ++i) w.push_back(rng() % r.n());
            }
            symca::check_symbols(w, r.n());
            emit(g, symca::serialize_trace(symca::evolve(r, symca::PConfig(w), o->steps)));
        });
    }
    {
        struct Opts {
            std::string trace;
            bool ascii = false;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand("render", "Render a trace as a binary graymap (one pixel per cell) or ASCII");
        sub->add_option("--trace", o->trace, "Trace file")->required();
        sub->add_flag("--ascii", o->ascii, "ASCII grid instead of PGM");
        on_run(sub, g, [o, &g] {
            const auto t = symca::parse_trace(symca::read_file(o->trace));
            emit(g, o->ascii ? symca::render_ascii(t) : symca::render_pgm(t));
        });
    }
}

}  // namespace cli
