#include "symca/constraints.hpp"

#include <numeric>
#include <random>
#include <sstream>

namespace symca {

namespace {

[[noreturn]] void out_of_hypothesis(const std::string& what) { throw Error(ErrorKind::OutOfHypothesis, what); }

bool uses_ms_layout(Construction c) {
    return c == Construction::MS || c == Construction::OMS || c == Construction::KMS || c == Construction::Tot;
}

// Length of the marker run between isolated cells of the MS-style layouts.
std::int64_t ms_l(int k0, int k) { return (k - k0) / (k0 - 1); }

std::uint64_t tot_base(std::uint64_t n0, int k0) { return k0 * (n0 - 1) + 1; }
std::uint64_t tot_one(std::uint64_t n0, int k0) { return k0 * (tot_base(n0, k0) + n0 - 1) + 1; }

std::uint64_t min_states(const ConstructionParams& p, std::uint64_t n0, int k0) {
    switch (p.kind) {
        case Construction::Tot: return tot_one(n0, k0) + 1;
        case Construction::KSet: return 2 * (k0 + 2) + n0;
        case Construction::CaptiveFullshift: return n0;
        default: return n0 + 2 * k0 + 4;
    }
}

PConfig random_base(std::mt19937_64& rng, std::uint64_t n0) {
    const auto p = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    std::uniform_int_distribution<State> symbol(0, n0 - 1);
    Word w(p);
    for (auto& s : w) s = symbol(rng);
    return PConfig(std::move(w));
}

std::mt19937_64 verification_rng(std::uint64_t seed) { return std::mt19937_64(seed ^ 0xc0ffee123456789ull); }

}  // namespace

Construction parse_construction(std::string_view text) {
    if (text == "ms") return Construction::MS;
    if (text == "tot") return Construction::Tot;
    if (text == "oms") return Construction::OMS;
    if (text == "kms") return Construction::KMS;
    if (text == "kset") return Construction::KSet;
    if (text == "captive-fullshift" || text == "fullshift") return Construction::CaptiveFullshift;
    throw Error(ErrorKind::InvalidArg, "unknown construction '" + std::string(text) + "'");
}

const char* to_string(Construction c) {
    switch (c) {
        case Construction::MS: return "ms";
        case Construction::Tot: return "tot";
        case Construction::OMS: return "oms";
        case Construction::KMS: return "kms";
        case Construction::KSet: return "kset";
        case Construction::CaptiveFullshift: return "captive-fullshift";
    }
    return "?";
}

FamilySpec ConstructionParams::family_spec() const {
    switch (kind) {
        case Construction::MS: return FamilySpec{Base::MS, std::nullopt, false};
        case Construction::Tot: return FamilySpec{Base::Tot, std::nullopt, false};
        case Construction::OMS: return FamilySpec{Base::MS, outer, false};
        case Construction::KMS: return FamilySpec{Base::MS, std::nullopt, true};
        case Construction::KSet: return FamilySpec{Base::Set, std::nullopt, true};
        case Construction::CaptiveFullshift: {
            FamilySpec f = family.value_or(FamilySpec{Base::K, std::nullopt, false});
            if (f.base != Base::K) f.captive = true;
            return f;
        }
    }
    return {};
}

PConfig Layout::build(const PConfig& q) const {
    const std::size_t blocks = std::lcm(q.period(), phases());
    Word w;
    w.reserve(blocks * block());
    for (std::size_t j = 0; j < blocks; ++j) {
        w.push_back(iso.at(q.at(static_cast<std::int64_t>(j))));
        const auto& m = markers[j % phases()];
        w.insert(w.end(), m.begin(), m.end());
    }
    return PConfig(std::move(w));
}

std::vector<int> subshift_indices(const ConstructionParams& p, std::uint64_t n0, int k0, std::uint64_t n, int k) {
    std::vector<int> js;
    if (n < min_states(p, n0, k0)) return js;
    if (p.kind == Construction::CaptiveFullshift) {
        if (k != k0) return js;
        for (std::uint64_t j = 0; j < n / n0; ++j) js.push_back(static_cast<int>(j));
        return js;
    }
    if (k0 < 2 || k < k0) return js;
    if (p.kind == Construction::KSet) {
        if ((k - 1) / (k0 - 1) < k0) return js;
        for (std::uint64_t j = 0; j < (n - 2 * (k0 + 2)) / n0; ++j) js.push_back(static_cast<int>(j));
        return js;
    }
    if (p.kind == Construction::OMS && (p.outer < 0 || p.outer > k)) return js;
    for (std::int64_t j = k0 + 1; j <= ms_l(k0, k) - k0 - 1; ++j) js.push_back(static_cast<int>(j));
    return js;
}

void check_hypotheses(const ConstructionParams& p, const Rule& a0, std::uint64_t n, int k, int j) {
    const auto n0 = a0.n();
    const int k0 = a0.k();
    if (p.kind != Construction::CaptiveFullshift && k0 < 2)
        out_of_hypothesis("k0 >= 2 is required (the marker length divides by k0-1)");
    if (n < min_states(p, n0, k0)) out_of_hypothesis("n >= " + std::to_string(min_states(p, n0, k0)) + " is required");
    switch (p.kind) {
        case Construction::MS:
        case Construction::OMS:
            if (!is_member(a0, FamilySpec{Base::MS, std::nullopt, false})) out_of_hypothesis("A0 must be a multiset rule");
            break;
        case Construction::KMS:
            if (!is_member(a0, FamilySpec{Base::MS, std::nullopt, true})) out_of_hypothesis("A0 must be captive multiset");
            break;
        case Construction::Tot:
            if (!is_member(a0, FamilySpec{Base::Tot, std::nullopt, false})) out_of_hypothesis("A0 must be totalistic");
            break;
        case Construction::KSet:
            if (!is_member(a0, FamilySpec{Base::Set, std::nullopt, true})) out_of_hypothesis("A0 must be captive set");
            if ((k - 1) / (k0 - 1) < k0) out_of_hypothesis("floor((k-1)/(k0-1)) >= k0 is required");
            break;
        case Construction::CaptiveFullshift:
            if (!is_member(a0, FamilySpec{Base::K, std::nullopt, false})) out_of_hypothesis("A0 must be captive");
            if (k != k0) out_of_hypothesis("k must equal k0");
            if (!is_member(a0, p.family_spec())) out_of_hypothesis("A0 must belong to " + p.family_spec().to_string());
            break;
    }
    if (p.kind == Construction::OMS && (p.outer < 0 || p.outer > k)) out_of_hypothesis("0 <= k' <= k is required");
    auto js = subshift_indices(p, n0, k0, n, k);
    if (std::find(js.begin(), js.end(), j) == js.end()) {
        if (uses_ms_layout(p.kind))
            out_of_hypothesis("j in [k0+1, l-k0-1] with l = floor((k-k0)/(k0-1)) = " + std::to_string(ms_l(k0, k)) +
                              " is required");
        out_of_hypothesis("j in [0, " + std::to_string(static_cast<int>(js.size()) - 1) + "] is required");
    }
}

Layout construction_layout(const ConstructionParams& p, const Rule& a0, std::uint64_t n, int k, int j) {
    const auto n0 = a0.n();
    const int k0 = a0.k();
    Layout layout;
    layout.iso.resize(n0);
    if (uses_ms_layout(p.kind)) {
        const auto l = ms_l(k0, k);
        State zero = n - 2, one = n - 1, base = 0;
        if (p.kind == Construction::Tot) {
            base = tot_base(n0, k0);
            zero = 0;
            one = tot_one(n0, k0);
        }
        for (State a = 0; a < n0; ++a) layout.iso[a] = base + a;
        Word m(l - j, zero);
        m.insert(m.end(), j, one);
        layout.markers.push_back(std::move(m));
        return layout;
    }
    if (p.kind == Construction::KSet) {
        const int labels = k0 + 2;
        const int block = (k - 1) / (k0 - 1);
        const int d = k - 1 - (k0 - 1) * block;
        for (State a = 0; a < n0; ++a) layout.iso[a] = 2 * labels + j * n0 + a;
        for (int lam = 0; lam < labels; ++lam) {
            Word m(d, 2 * lam);
            m.insert(m.end(), block - 1 - d, 2 * lam + 1);
            layout.markers.push_back(std::move(m));
        }
        return layout;
    }
    for (State a = 0; a < n0; ++a) layout.iso[a] = j * n0 + a;
    layout.markers.push_back({});
    return layout;
}

ConstraintSet constraints_from_layout(const FamilySpec& family, const Rule& a0, std::uint64_t n, int k,
                                      const Layout& layout) {
    family.validate(k);
    ConstraintSet cs;
    cs.family = family;
    cs.n0 = a0.n();
    cs.k0 = a0.k();
    cs.n = n;
    cs.k = k;
    cs.layout = layout;
    cs.shift = (k - 1) / 2;
    const std::size_t b = layout.block();
    for (std::size_t phase = 0; phase < b; ++phase) {
        for (std::size_t lam = 0; lam < layout.phases(); ++lam) {
            Word window(k);
            std::vector<int> slots;
            for (int i = 0; i < k; ++i) {
                const std::size_t cell = phase + i;
                const std::size_t within = cell % b;
                if (within == 0) {
                    slots.push_back(i);
                } else {
                    window[i] = layout.markers[(lam + cell / b) % layout.phases()][within - 1];
                }
            }
            if (phase == 0 && static_cast<int>(slots.size()) != cs.k0)
                throw Error(ErrorKind::ConstructionError, "a window starting on an isolated cell covers " +
                                                              std::to_string(slots.size()) + " isolated cells, not k0");
            const auto combos = checked_pow(cs.n0, slots.size());
            if (!combos || *combos > 10'000'000) throw Error(ErrorKind::TooLarge, "too many isolated-cell assignments");
            Word values(slots.size());
            for (std::uint64_t c = 0; c < *combos; ++c) {
                std::uint64_t rest = c;
                for (std::size_t s = slots.size(); s-- > 0;) {
                    values[s] = rest % cs.n0;
                    rest /= cs.n0;
                }
                for (std::size_t s = 0; s < slots.size(); ++s) window[slots[s]] = layout.iso[values[s]];
                const State out = phase == 0 ? layout.iso[a0(std::span<const State>(values).first(cs.k0))] : window[0];
                auto key = family_key(family, window);
                auto [it, inserted] = cs.entries.try_emplace(std::move(key), ConstraintEntry{out, window});
                if (!inserted && it->second.output != out) {
                    std::ostringstream os;
                    os << "conflicting requirements on one key class: window phase " << phase << " label phase " << lam
                       << " needs " << out << ", another window needs " << it->second.output;
                    throw Error(ErrorKind::ConstructionError, os.str());
                }
            }
        }
    }
    for (const auto& [key, entry] : cs.entries) {
        const auto allowed = allowed_outputs(family, n, k, key);
        if (!std::binary_search(allowed.begin(), allowed.end(), entry.output))
            throw Error(ErrorKind::InfeasibleConstraint, "required output " + std::to_string(entry.output) +
                                                             " is not allowed by family " + family.to_string());
    }
    return cs;
}

ConstraintSet build_constraints(const ConstructionParams& p, const Rule& a0, std::uint64_t n, int k, int j) {
    check_hypotheses(p, a0, n, k, j);
    auto cs = constraints_from_layout(p.family_spec(), a0, n, k, construction_layout(p, a0, n, k, j));
    cs.construction = p.kind;
    cs.j = j;
    return cs;
}

ConstraintSet constraints_from_tuples(const FamilySpec& family, std::uint64_t n, int k,
                                      const std::vector<std::pair<Word, State>>& requirements) {
    family.validate(k);
    ConstraintSet cs;
    cs.family = family;
    cs.n = n;
    cs.k = k;
    cs.construction = Construction::CaptiveFullshift;
    for (const auto& [tuple, out] : requirements) {
        if (static_cast<int>(tuple.size()) != k) throw Error(ErrorKind::ShapeError, "requirement tuple has wrong length");
        check_symbols(tuple, n);
        if (out >= n) throw Error(ErrorKind::InvalidState, "required output out of range");
        auto [it, inserted] = cs.entries.try_emplace(family_key(family, tuple), ConstraintEntry{out, tuple});
        if (!inserted && it->second.output != out)
            throw Error(ErrorKind::ConstructionError, "conflicting requirements on one key class");
        const auto allowed = allowed_outputs(family, n, k, it->first);
        if (!std::binary_search(allowed.begin(), allowed.end(), out))
            throw Error(ErrorKind::InfeasibleConstraint, "required output not allowed by the family");
    }
    return cs;
}

Rational exact_alpha(const ConstraintSet& cs) {
    Rational alpha = 1;
    for (const auto& [key, entry] : cs.entries) {
        const auto allowed = allowed_outputs(cs.family, cs.n, cs.k, key);
        if (!std::binary_search(allowed.begin(), allowed.end(), entry.output))
            throw Error(ErrorKind::InfeasibleConstraint, "constraint output not allowed by the family");
        alpha /= allowed.size();
    }
    return alpha;
}

bool satisfies(const Rule& rule, const ConstraintSet& cs) {
    for (const auto& [key, entry] : cs.entries)
        if (rule(entry.tuple) != entry.output) return false;
    return true;
}

Rule constrained_sample(const ConstraintSet& cs, std::uint64_t seed) {
    for (const auto& [key, entry] : cs.entries) {
        const auto allowed = allowed_outputs(cs.family, cs.n, cs.k, key);
        if (!std::binary_search(allowed.begin(), allowed.end(), entry.output))
            throw Error(ErrorKind::InfeasibleConstraint, "constraint output not allowed by the family");
    }
    const Rule base = lazy_sampler(cs.family, cs.n, cs.k, seed);
    auto entries = std::make_shared<const std::map<NKey, ConstraintEntry>>(cs.entries);
    const FamilySpec family = cs.family;
    Rule::Evaluator eval = [base, entries, family](std::span<const State> u) -> State {
        auto it = entries->find(family_key(family, u));
        return it != entries->end() ? it->second.output : base(u);
    };
    return Rule::intensional(cs.n, cs.k, std::move(eval), "constrained:" + base.id());
}

ConstructionCheck verify_constructed_simulation(const ConstraintSet& cs, const Rule& a0, int steps,
                                                std::uint64_t seed) {
    if (cs.layout.markers.empty()) throw Error(ErrorKind::InvalidArg, "constraint set has no layout");
    if (a0.n() != cs.n0 || a0.k() != cs.k0) throw Error(ErrorKind::InvalidArg, "A0 does not match the constraint set");
    const Rule rule = constrained_sample(cs, seed);
    auto rng = verification_rng(seed);
    PConfig ref = random_base(rng, cs.n0);
    PConfig c = cs.layout.build(ref);
    for (int t = 1; t <= steps; ++t) {
        c = step(rule, c);
        ref = step(a0, ref);
        const auto expected =
            cs.layout.build(ref.rotate(std::int64_t{t} * a0.left())).shifted(std::int64_t{t} * cs.shift);
        if (expected.period() != c.period())
            throw Error(ErrorKind::ConstructionError, "template period differs from the evolved configuration");
        for (std::size_t z = 0; z < c.period(); ++z) {
            if (c.word()[z] != expected.word()[z]) {
                return ConstructionCheck{false, t,
                                         "structure lost at step " + std::to_string(t) + ", cell " + std::to_string(z)};
            }
        }
    }
    return ConstructionCheck{true, -1, "ok"};
}

ConstraintSet mutate_first_used(const ConstraintSet& cs, const Rule& a0, std::uint64_t seed) {
    auto rng = verification_rng(seed);
    const PConfig c = cs.layout.build(random_base(rng, a0.n()));
    const int left = (cs.k - 1) / 2;
    Word window(cs.k);
    for (std::size_t z = 0; z < c.period(); ++z) {
        for (int i = 0; i < cs.k; ++i) window[i] = c.at(static_cast<std::int64_t>(z) - left + i);
        const auto key = family_key(cs.family, window);
        auto it = cs.entries.find(key);
        if (it == cs.entries.end()) continue;
        const auto allowed = allowed_outputs(cs.family, cs.n, cs.k, key);
        if (allowed.size() < 2) continue;
        ConstraintSet mutated = cs;
        auto pos = std::find(allowed.begin(), allowed.end(), it->second.output) - allowed.begin();
        mutated.entries[key].output = allowed[(pos + 1) % allowed.size()];
        return mutated;
    }
    throw Error(ErrorKind::ConstructionError, "no constrained window with an alternative output");
}

std::string serialize_constraints(const ConstraintSet& cs) {
    std::ostringstream os;
    os << "construction " << to_string(cs.construction) << "\nfamily " << cs.family.to_string() << "\nn0 " << cs.n0
       << "\nk0 " << cs.k0 << "\nn " << cs.n << "\nk " << cs.k << "\nj " << cs.j << "\nshift " << cs.shift
       << "\nentries " << cs.entries.size() << '\n';
    for (const auto& [key, entry] : cs.entries) {
        os << "entry";
        for (State s : entry.tuple) os << ' ' << s;
        os << " -> " << entry.output << '\n';
    }
    return os.str();
}

}  // namespace symca
