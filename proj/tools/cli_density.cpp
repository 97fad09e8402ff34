#include <sstream>

#include "cli_common.hpp"
#include "symca/density.hpp"
#include "symca/io.hpp"

namespace cli {

namespace {

struct ConstructionOpts {
    std::string construction = "ms";
    std::string a0;
    int outer = 1;
    std::string family;

    symca::ConstructionParams params() const {
        symca::ConstructionParams p;
        p.kind = symca::parse_construction(construction);
        p.outer = outer;
        if (!family.empty()) p.family = symca::FamilySpec::parse(family);
        return p;
    }
};

void add_construction(CLI::App* sub, ConstructionOpts& o, bool need_a0 = true) {
    sub->add_option("--construction", o.construction, "ms, tot, oms, kms, kset or captive-fullshift");
    auto* a0 = sub->add_option("--a0", o.a0, "Rule to embed (A0)");
    if (need_a0) a0->required();
    sub->add_option("--outer", o.outer, "Outer width k' for oms");
    sub->add_option("--family", o.family, "Target family for captive-fullshift (default k)");
}

struct SizeJ {
    std::uint64_t n = 0;
    int k = 0;
    std::optional<int> j;
};

void add_size_j(CLI::App* sub, SizeJ& s) {
    sub->add_option("--n", s.n, "Target number of states")->required()->check(CLI::PositiveNumber);
    sub->add_option("--k", s.k, "Target neighbourhood size")->required()->check(CLI::PositiveNumber);
    sub->add_option("--j", s.j, "Subshift index (default: the first valid one)");
}

int resolve_j(const symca::ConstructionParams& p, const symca::Rule& a0, const SizeJ& s) {
    if (s.j) return *s.j;
    const auto js = symca::subshift_indices(p, a0.n(), a0.k(), s.n, s.k);
    if (js.empty())
        throw symca::Error(symca::ErrorKind::OutOfHypothesis,
                           "no subshift at n=" + std::to_string(s.n) + " k=" + std::to_string(s.k));
    return js.front();
}

std::string rational(const symca::Rational& r) {
    std::ostringstream os;
    os << numerator(r) << '/' << denominator(r);
    return os.str();
}

}  // namespace

void add_density_commands(CLI::App& app, Globals& g) {
    {
        auto o = std::make_shared<ConstructionOpts>();
        auto s = std::make_shared<SizeJ>();
        auto* sub = app.add_subcommand(
            "build-constraints", "Outputs a family member must take to simulate A0 on one marker subshift");
        add_construction(sub, *o);
        add_size_j(sub, *s);
        on_run(sub, g, [o, s, &g] {
            const auto a0 = load_rule(o->a0);
            const auto p = o->params();
            const auto cs = symca::build_constraints(p, a0, s->n, s->k, resolve_j(p, a0, *s));
            emit(g, symca::serialize_constraints(cs) + "alpha " + rational(symca::exact_alpha(cs)) + '\n');
        });
    }
    {
        struct Opts {
            ConstructionOpts c;
            std::string path, manifest, save_manifest;
            std::int64_t from = 0, to = 0;
            std::uint64_t samples = 0;
            SizeJ mc;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand(
            "density", "Lower bounds 1 - prod(1 - alpha_j) along a size path, or a Monte Carlo estimate of alpha");
        add_construction(sub, o->c, false);
        sub->add_option("--path", o->path, "fixed-k:K, fixed-n:N or list:NxK,...");
        sub->add_option("--from", o->from, "First x");
        sub->add_option("--to", o->to, "Last x");
        sub->add_option("--manifest", o->manifest, "Replay an experiment manifest (overrides the flags above)");
        sub->add_option("--save-manifest", o->save_manifest, "Write the resolved experiment as a manifest");
        sub->add_option("--samples", o->samples, "Monte Carlo: estimate the probability of one constraint set");
        sub->add_option("--n", o->mc.n, "Monte Carlo target states");
        sub->add_option("--k", o->mc.k, "Monte Carlo target neighbourhood");
        sub->add_option("--j", o->mc.j, "Monte Carlo subshift index");
        on_run(sub, g, [o, &g] {
            if (o->samples > 0) {
                if (o->c.a0.empty() || o->mc.n == 0 || o->mc.k == 0) throw Failure("--samples needs --a0, --n and --k");
                const auto a0 = load_rule(o->c.a0);
                const auto p = o->c.params();
                const auto cs = symca::build_constraints(p, a0, o->mc.n, o->mc.k, resolve_j(p, a0, o->mc));
                const auto est = symca::empirical_density(
                    cs.family, cs.n, cs.k, [&cs](const symca::Rule& r) { return symca::satisfies(r, cs); },
                    o->samples, g.seed);
                std::ostringstream os;
                os.precision(10);
                if (g.csv()) {
                    os << "kind,value,ci_low,ci_high,samples,hits,alpha_exact\n"
                       << est.kind << ',' << est.value << ',' << est.ci->first << ',' << est.ci->second << ','
                       << est.samples << ',' << est.hits << ',' << rational(symca::exact_alpha(cs)) << '\n';
                } else {
                    os << "kind " << est.kind << "\nvalue " << est.value << "\nci " << est.ci->first << ' '
                       << est.ci->second << "\nsamples " << est.samples << "\nhits " << est.hits << "\nalpha_exact "
                       << rational(symca::exact_alpha(cs)) << '\n';
                }
                emit(g, os.str());
                return;
            }
            symca::Manifest m;
            if (!o->manifest.empty()) {
                m = symca::parse_manifest(symca::read_file(o->manifest));
            } else {
                if (o->c.a0.empty() || o->path.empty()) throw Failure("density needs --a0 and --path, or --manifest");
                m.params = o->c.params();
                m.a0_path = o->c.a0;
                m.path = symca::PathSpec::parse(o->path);
                m.from = o->from;
                m.to = o->to;
                m.seed = g.seed;
            }
            if (!o->save_manifest.empty()) symca::write_file(o->save_manifest, symca::serialize_manifest(m));
            const auto rows = symca::density_curve(m.path, m.params, load_rule(m.a0_path), m.from, m.to);
            emit(g, symca::curve_csv(rows));
        });
    }
    {
        struct Opts {
            ConstructionOpts c;
            SizeJ s;
            int steps = 6, seeds = 20;
            bool mutate = false;
        };
        auto o = std::make_shared<Opts>();
        auto* sub = app.add_subcommand(
            "verify-construction", "Run constrained samples from layout images of A0 configurations and compare traces");
        add_construction(sub, o->c);
        add_size_j(sub, o->s);
        sub->add_option("--steps", o->steps, "Simulated steps")->check(CLI::NonNegativeNumber);
        sub->add_option("--seeds", o->seeds, "Number of seeds, starting at --seed")->check(CLI::PositiveNumber);
        sub->add_flag("--mutate", o->mutate, "Flip one used constraint first (the check is then expected to fail)");
        on_run(sub, g, [o, &g] {
            const auto a0 = load_rule(o->c.a0);
            const auto p = o->c.params();
            auto cs = symca::build_constraints(p, a0, o->s.n, o->s.k, resolve_j(p, a0, o->s));
            if (o->mutate) cs = symca::mutate_first_used(cs, a0, g.seed);
            int passed = 0;
            std::ostringstream os;
            for (int i = 0; i < o->seeds; ++i) {
                const auto seed = g.seed + static_cast<std::uint64_t>(i);
                const auto r = symca::verify_constructed_simulation(cs, a0, o->steps, seed);
                if (r.ok) {
                    ++passed;
                } else {
                    os << "seed " << seed << " failed at step " << r.failed_step << ": " << r.message << '\n';
                }
            }
            os << "passed " << passed << '/' << o->seeds << '\n';
            emit(g, os.str());
            if (passed != o->seeds) throw Failure("construction verification failed");
        });
    }
}

}  // namespace cli
