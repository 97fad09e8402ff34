#include "symca/family.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

namespace symca {

namespace {

constexpr std::uint64_t kOuterSeparator = ~std::uint64_t{0};

std::string_view base_name(Base b) {
    switch (b) {
        case Base::All: return "all";
        case Base::MS: return "ms";
        case Base::Set: return "set";
        case Base::Tot: return "tot";
        case Base::SS: return "ss";
        case Base::K: return "k";
    }
    return "?";
}

Word support_of(std::span<const State> tuple) {
    Word s(tuple.begin(), tuple.end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

Word all_states(std::uint64_t n) {
    Word w(n);
    std::iota(w.begin(), w.end(), State{0});
    return w;
}

// Calls f(counts) for every multiset of size m over 0..n-1, counts[s] being
// the multiplicity of s. Multisets are visited in lexicographic order of
// their sorted word.
void for_each_multiset(std::uint64_t n, int m, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> counts(n, 0);
    std::function<void(std::uint64_t, int)> rec = [&](std::uint64_t s, int left) {
        if (s + 1 == n) {
            counts[s] = left;
            f(counts);
            counts[s] = 0;
            return;
        }
        for (int c = left; c >= 0; --c) {
            counts[s] = c;
            rec(s + 1, left - c);
        }
        counts[s] = 0;
    };
    rec(0, m);
}

Word multiset_word(const std::vector<int>& counts) {
    Word w;
    for (std::size_t s = 0; s < counts.size(); ++s) w.insert(w.end(), counts[s], s);
    return w;
}

// Intersection of the supports of every multiset of size m over 0..n-1 with
// the given sum. Empty when m = 0 or no multiset has that sum.
Word intersect_sum_supports(std::uint64_t n, int m, std::uint64_t sum) {
    if (m == 0) return {};
    std::vector<char> keep(n, 1);
    bool any = false;
    Word current;
    std::function<void(State, int, std::uint64_t)> rec = [&](State lo, int left, std::uint64_t remaining) {
        if (left == 0) {
            if (remaining != 0) return;
            any = true;
            std::vector<char> present(n, 0);
            for (State s : current) present[s] = 1;
            for (std::uint64_t s = 0; s < n; ++s) keep[s] = keep[s] && present[s];
            return;
        }
        for (State s = lo; s < n; ++s) {
            if (s * left > remaining) break;
            if ((n - 1) * left < remaining) return;
            current.push_back(s);
            rec(s, left - 1, remaining - s);
            current.pop_back();
        }
    };
    rec(0, m, sum);
    Word out;
    if (!any) return out;
    for (std::uint64_t s = 0; s < n; ++s)
        if (keep[s]) out.push_back(s);
    return out;
}

Word set_union(const Word& a, const Word& b) {
    Word out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Word set_intersection(const Word& a, const Word& b) {
    Word out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Symmetric part of a key for MS/SET/TOT over `part`.
void append_symmetric_key(Base base, std::span<const State> part, std::vector<std::uint64_t>& out) {
    switch (base) {
        case Base::MS: {
            Word w(part.begin(), part.end());
            std::sort(w.begin(), w.end());
            out.insert(out.end(), w.begin(), w.end());
            break;
        }
        case Base::Set: {
            Word w = support_of(part);
            out.insert(out.end(), w.begin(), w.end());
            break;
        }
        case Base::Tot: {
            std::uint64_t sum = 0;
            for (State s : part) sum += s;
            out.push_back(sum);
            break;
        }
        default: out.insert(out.end(), part.begin(), part.end());
    }
}

bool is_k_like(const FamilySpec& spec) {
    return spec.base == Base::K || (spec.base == Base::All && spec.captive);
}

// Product of powers with a size guard before expansion.
class PowProduct {
public:
    void add(std::uint64_t base, const BigInt& exponent) {
        if (base <= 1 || exponent == 0) return;
        exps_[base] += exponent;
    }
    BigInt value() const {
        double bits = 0;
        for (const auto& [base, e] : exps_) bits += std::log2(static_cast<double>(base)) * e.convert_to<double>();
        if (bits > double(1u << 24)) throw Error(ErrorKind::TooLarge, "count has more than 2^24 bits");
        BigInt result = 1;
        for (const auto& [base, e] : exps_) result *= boost::multiprecision::pow(BigInt(base), e.convert_to<unsigned>());
        return result;
    }

private:
    std::map<std::uint64_t, BigInt> exps_;
};

BigInt binomial(std::uint64_t a, std::uint64_t b) {
    if (b > a) return 0;
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= b; ++i) {
        r *= a - b + i;
        r /= i;
    }
    return r;
}

BigInt factorial(std::uint64_t m) {
    BigInt r = 1;
    for (std::uint64_t i = 2; i <= m; ++i) r *= i;
    return r;
}

// Restricted growth strings of length k with at most n blocks: canonical
// representatives of tuples under simultaneous renaming of states. The RGS is
// the lexicographically minimal tuple of its orbit.
void for_each_rgs(std::uint64_t n, int k, const std::function<void(const Word&, std::uint64_t)>& f) {
    Word w(k, 0);
    std::function<void(int, std::uint64_t)> rec = [&](int pos, std::uint64_t blocks) {
        if (pos == k) {
            f(w, blocks);
            return;
        }
        for (std::uint64_t s = 0; s <= blocks && s < n; ++s) {
            w[pos] = s;
            rec(pos + 1, std::max(blocks, s + 1));
        }
    };
    rec(0, 0);
}

// Outputs allowed for an SS orbit with b blocks: the states of the tuple
// (ranks 0..b-1), plus the unique missing state when exactly one is missing.
std::uint64_t ss_choices(std::uint64_t n, std::uint64_t blocks) { return blocks + (n - blocks == 1 ? 1 : 0); }

struct Canonical {
    Word rgs;
    Word state_of_rank;
};

Canonical canonicalize(std::span<const State> u, std::uint64_t n) {
    Canonical c;
    std::vector<std::int64_t> rank(n, -1);
    for (State s : u) {
        if (rank[s] < 0) {
            rank[s] = static_cast<std::int64_t>(c.state_of_rank.size());
            c.state_of_rank.push_back(s);
        }
        c.rgs.push_back(static_cast<State>(rank[s]));
    }
    return c;
}

State missing_state(const Word& present, std::uint64_t n) {
    std::vector<char> seen(n, 0);
    for (State s : present) seen[s] = 1;
    for (std::uint64_t s = 0; s < n; ++s)
        if (!seen[s]) return s;
    return 0;
}

void for_each_ss_member(std::uint64_t n, int k, const std::function<void(const Rule&)>& visit, std::uint64_t cap) {
    std::vector<Word> reps;
    std::vector<std::uint64_t> choices;
    std::map<Word, std::size_t> rep_index;
    for_each_rgs(n, k, [&](const Word& w, std::uint64_t blocks) {
        rep_index[w] = reps.size();
        reps.push_back(w);
        choices.push_back(ss_choices(n, blocks));
    });
    BigInt total = 1;
    for (auto c : choices) total *= c;
    if (total > cap) throw Error(ErrorKind::TooLarge, "SS family exceeds the enumeration cap");
    auto count = checked_pow(n, k);
    if (!count || *count > kDefaultDensifyCap) throw Error(ErrorKind::TooLarge, "n^k exceeds the densify cap");

    // Precompute, per tuple, its orbit and the rank->state map.
    std::vector<std::size_t> orbit(*count);
    std::vector<Word> ranks(*count);
    Word u(k);
    for (std::uint64_t idx = 0; idx < *count; ++idx) {
        std::uint64_t rest = idx;
        for (int i = k - 1; i >= 0; --i) {
            u[i] = rest % n;
            rest /= n;
        }
        auto c = canonicalize(u, n);
        orbit[idx] = rep_index.at(c.rgs);
        ranks[idx] = std::move(c.state_of_rank);
    }
    std::vector<std::uint64_t> choice(reps.size(), 0);
    while (true) {
        std::vector<State> table(*count);
        for (std::uint64_t idx = 0; idx < *count; ++idx) {
            const auto& rk = ranks[idx];
            const auto pick = choice[orbit[idx]];
            table[idx] = pick < rk.size() ? rk[pick] : missing_state(rk, n);
        }
        visit(Rule::dense(n, k, std::move(table)));
        std::size_t pos = reps.size();
        while (pos > 0) {
            --pos;
            if (++choice[pos] < choices[pos]) break;
            choice[pos] = 0;
            if (pos == 0) return;
        }
        if (reps.empty()) return;
    }
}

bool is_ss_member(const Rule& rule, std::uint64_t cap) {
    const auto n = rule.n();
    auto count = rule.tuple_count();
    if (!count || *count > cap) throw Error(ErrorKind::TooLarge, "rule too large for an exhaustive SS check");
    Word u(rule.k());
    Word v(rule.k());
    for (std::uint64_t t = 0; t + 1 < n; ++t) {
        auto swap = [t](State s) { return s == t ? t + 1 : (s == t + 1 ? t : s); };
        for (std::uint64_t idx = 0; idx < *count; ++idx) {
            rule.tuple_at(idx, u);
            for (std::size_t i = 0; i < u.size(); ++i) v[i] = swap(u[i]);
            if (rule(v) != swap(rule(u))) return false;
        }
    }
    return true;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t draw_index(std::uint64_t seed, const NKey& key, std::uint64_t size) {
    std::uint64_t h = splitmix64(seed ^ 0x5eed5eed5eed5eedull);
    for (auto part : key.parts) h = splitmix64(h ^ part);
    h = splitmix64(h ^ key.parts.size());
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(h) * size) >> 64);
}

}  // namespace

FamilySpec FamilySpec::parse(std::string_view text) {
    FamilySpec spec;
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t.rfind("k+", 0) == 0) {
        spec = parse(t.substr(2));
        if (spec.base == Base::SS) throw Error(ErrorKind::InvalidSpec, "SS intersections are not supported");
        if (spec.base == Base::All) spec.base = Base::K;
        else if (spec.base != Base::K) spec.captive = true;
        return spec;
    }
    if (t == "kms") return FamilySpec{Base::MS, std::nullopt, true};
    if (t == "kset") return FamilySpec{Base::Set, std::nullopt, true};
    if (t == "ktot") return FamilySpec{Base::Tot, std::nullopt, true};
    static const std::map<std::string, Base> plain = {{"all", Base::All}, {"ca", Base::All}, {"ms", Base::MS},
                                                      {"set", Base::Set}, {"tot", Base::Tot}, {"ss", Base::SS},
                                                      {"k", Base::K}};
    if (auto it = plain.find(t); it != plain.end()) return FamilySpec{it->second, std::nullopt, false};
    static const std::map<std::string, Base> outer = {{"oms", Base::MS}, {"oset", Base::Set}, {"otot", Base::Tot}};
    auto colon = t.find(':');
    if (colon != std::string::npos) {
        if (auto it = outer.find(t.substr(0, colon)); it != outer.end()) {
            const auto digits = t.substr(colon + 1);
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                throw Error(ErrorKind::InvalidSpec, "bad outer width in '" + t + "'");
            return FamilySpec{it->second, std::stoi(digits), false};
        }
    }
    throw Error(ErrorKind::InvalidSpec, "unknown family '" + std::string(text) + "'");
}

std::string FamilySpec::to_string() const {
    if (base == Base::K || (base == Base::All && captive)) return "k";
    std::string name;
    if (outer) name = "o" + std::string(base_name(base)) + ":" + std::to_string(*outer);
    else name = std::string(base_name(base));
    if (!captive) return name;
    if (!outer) return "k" + name;
    return "k+" + name;
}

void FamilySpec::validate(int k) const {
    if (outer) {
        if (base != Base::MS && base != Base::Set && base != Base::Tot)
            throw Error(ErrorKind::InvalidSpec, "outer width only applies to ms, set and tot");
        if (*outer < 0 || *outer > k)
            throw Error(ErrorKind::InvalidSpec, "outer width k'=" + std::to_string(*outer) + " exceeds k=" + std::to_string(k));
    }
    if (base == Base::SS && captive) throw Error(ErrorKind::InvalidSpec, "SS intersections are not supported");
}

std::size_t NKeyHash::operator()(const NKey& key) const noexcept {
    std::uint64_t h = 0x243f6a8885a308d3ull;
    for (auto p : key.parts) h = splitmix64(h ^ p);
    return static_cast<std::size_t>(h);
}

NKey family_key(const FamilySpec& spec, std::span<const State> tuple) {
    const int k = static_cast<int>(tuple.size());
    spec.validate(k);
    NKey key;
    if (spec.outer) {
        const int kp = *spec.outer;
        const int start = (k - kp) / 2;
        key.parts.assign(tuple.begin() + start, tuple.begin() + start + kp);
        key.parts.push_back(kOuterSeparator);
        Word rest(tuple.begin(), tuple.begin() + start);
        rest.insert(rest.end(), tuple.begin() + start + kp, tuple.end());
        append_symmetric_key(spec.base, rest, key.parts);
        return key;
    }
    append_symmetric_key(spec.base, tuple, key.parts);
    return key;
}

Word allowed_outputs(const FamilySpec& spec, std::uint64_t n, int k, const NKey& key) {
    if (spec.base == Base::SS) throw Error(ErrorKind::Unsupported, "SS is not a key-class family");
    if (!spec.is_captive()) return all_states(n);
    if (is_k_like(spec)) return support_of(key.parts);

    Word centre;
    std::span<const std::uint64_t> rest(key.parts);
    int m = k;
    if (spec.outer) {
        auto sep = std::find(key.parts.begin(), key.parts.end(), kOuterSeparator);
        centre = support_of(Word(key.parts.begin(), sep));
        rest = std::span<const std::uint64_t>(&*sep + 1, key.parts.end() - sep - 1);
        m = k - *spec.outer;
    }
    Word outer;
    switch (spec.base) {
        case Base::MS:
        case Base::Set: outer = support_of(Word(rest.begin(), rest.end())); break;
        case Base::Tot: outer = rest.empty() ? Word{} : intersect_sum_supports(n, m, rest[0]); break;
        default: break;
    }
    return set_union(centre, outer);
}

KeyClasses KeyClasses::build(const FamilySpec& spec, std::uint64_t n, int k, std::uint64_t cap) {
    spec.validate(k);
    if (spec.base == Base::SS) throw Error(ErrorKind::Unsupported, "SS is not a key-class family");
    auto count = checked_pow(n, k);
    if (!count || *count > cap) throw Error(ErrorKind::TooLarge, "n^k exceeds the class-table cap");
    KeyClasses kc;
    kc.spec = spec;
    kc.n = n;
    kc.k = k;
    kc.class_of.resize(*count);
    std::unordered_map<NKey, std::uint32_t, NKeyHash> index;
    const bool captive = spec.is_captive();
    const Word everything = all_states(n);
    Word u(k);
    for (std::uint64_t idx = 0; idx < *count; ++idx) {
        std::uint64_t rest = idx;
        for (int i = k - 1; i >= 0; --i) {
            u[i] = rest % n;
            rest /= n;
        }
        NKey key = family_key(spec, u);
        auto [it, inserted] = index.try_emplace(key, static_cast<std::uint32_t>(kc.keys.size()));
        if (inserted) {
            kc.keys.push_back(std::move(key));
            kc.min_tuple.push_back(idx);
            kc.allowed.push_back(captive ? support_of(u) : everything);
        } else if (captive) {
            auto& a = kc.allowed[it->second];
            a = set_intersection(a, support_of(u));
        }
        kc.class_of[idx] = it->second;
    }
    return kc;
}

BigInt KeyClasses::member_count() const {
    BigInt total = 1;
    for (const auto& a : allowed) total *= a.size();
    return total;
}

bool is_member(const Rule& rule, const FamilySpec& spec, std::uint64_t cap) {
    spec.validate(rule.k());
    if (spec.base == Base::SS) return is_ss_member(rule, cap);
    if (spec.base == Base::All && !spec.captive) return true;
    auto count = rule.tuple_count();
    if (!count || *count > cap) throw Error(ErrorKind::TooLarge, "rule too large for an exhaustive membership check");
    const bool captive = spec.is_captive();
    const bool keyed = !is_k_like(spec);
    std::unordered_map<NKey, State, NKeyHash> seen;
    Word u(rule.k());
    for (std::uint64_t idx = 0; idx < *count; ++idx) {
        rule.tuple_at(idx, u);
        const State out = rule(u);
        if (captive && std::find(u.begin(), u.end(), out) == u.end()) return false;
        if (keyed) {
            auto [it, inserted] = seen.try_emplace(family_key(spec, u), out);
            if (!inserted && it->second != out) return false;
        }
    }
    return true;
}

BigInt count_family(const FamilySpec& spec, std::uint64_t n, int k) {
    spec.validate(k);
    if (n < 1 || k < 1) throw Error(ErrorKind::InvalidArg, "n and k must be >= 1");
    PowProduct product;
    if (spec.base == Base::All && !spec.captive) {
        product.add(n, boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(k)));
        return product.value();
    }
    if (spec.base == Base::SS) {
        BigInt total = 1;
        std::uint64_t orbits = 0;
        for_each_rgs(n, k, [&](const Word&, std::uint64_t blocks) {
            if (++orbits > kDefaultEnumerationCap) throw Error(ErrorKind::TooLarge, "too many SS orbits");
            total *= ss_choices(n, blocks);
        });
        return total;
    }
    if (is_k_like(spec)) {
        // Each multiset class contributes |support|^(number of tuples in it).
        const BigInt kfact = factorial(k);
        for_each_multiset(n, k, [&](const std::vector<int>& counts) {
            BigInt tuples = kfact;
            std::uint64_t support = 0;
            for (int c : counts) {
                tuples /= factorial(c);
                support += c > 0;
            }
            product.add(support, tuples);
        });
        return product.value();
    }
    const int kp = spec.outer.value_or(0);
    const int m = k - kp;
    if (!spec.captive) {
        // Closed forms: n^(number of key classes).
        BigInt symmetric = 0;
        switch (spec.base) {
            case Base::MS: symmetric = binomial(n + m - 1, m); break;
            case Base::Set:
                if (m == 0) symmetric = 1;
                else
                    for (std::uint64_t i = 1; i <= std::min<std::uint64_t>(n, m); ++i) symmetric += binomial(n, i);
                break;
            case Base::Tot: symmetric = BigInt(m) * (n - 1) + 1; break;
            default: break;
        }
        product.add(n, boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(kp)) * symmetric);
        return product.value();
    }
    // Captive intersections: walk representative tuples (centre word x outer
    // multiset) and intersect supports per key class.
    auto centres = checked_pow(n, kp);
    BigInt reps = BigInt(centres.value_or(UINT64_MAX)) * binomial(n + m - 1, m);
    if (!centres || reps > kDefaultEnumerationCap) throw Error(ErrorKind::TooLarge, "too many key classes to enumerate");
    std::map<NKey, Word> inter;
    const int start = m / 2;
    Word centre(kp);
    for (std::uint64_t c = 0; c < *centres; ++c) {
        std::uint64_t rest = c;
        for (int i = kp - 1; i >= 0; --i) {
            centre[i] = rest % n;
            rest /= n;
        }
        for_each_multiset(n, m, [&](const std::vector<int>& counts) {
            Word outer = multiset_word(counts);
            Word tuple(outer.begin(), outer.begin() + start);
            tuple.insert(tuple.end(), centre.begin(), centre.end());
            tuple.insert(tuple.end(), outer.begin() + start, outer.end());
            NKey key = family_key(spec, tuple);
            Word supp = support_of(tuple);
            auto [it, inserted] = inter.try_emplace(std::move(key), supp);
            if (!inserted) it->second = set_intersection(it->second, supp);
        });
    }
    for (const auto& [key, allowed] : inter) {
        if (allowed.empty()) return 0;
        product.add(allowed.size(), 1);
    }
    return product.value();
}

void for_each_member(const FamilySpec& spec, std::uint64_t n, int k, const std::function<void(const Rule&)>& visit,
                     std::uint64_t cap) {
    spec.validate(k);
    if (spec.base == Base::SS) {
        for_each_ss_member(n, k, visit, cap);
        return;
    }
    auto kc = KeyClasses::build(spec, n, k);
    const BigInt total = kc.member_count();
    if (total > cap) throw Error(ErrorKind::TooLarge, "family has more members than the enumeration cap");
    if (total == 0) return;
    const std::size_t classes = kc.keys.size();
    std::vector<std::size_t> choice(classes, 0);
    while (true) {
        std::vector<State> table(kc.class_of.size());
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
            const auto c = kc.class_of[idx];
            table[idx] = kc.allowed[c][choice[c]];
        }
        visit(Rule::dense(n, k, std::move(table)));
        std::size_t pos = classes;
        bool done = true;
        while (pos > 0) {
            --pos;
            if (++choice[pos] < kc.allowed[pos].size()) {
                done = false;
                break;
            }
            choice[pos] = 0;
        }
        if (done) return;
    }
}

std::vector<Rule> enumerate_family(const FamilySpec& spec, std::uint64_t n, int k, std::uint64_t cap) {
    std::vector<Rule> out;
    for_each_member(spec, n, k, [&](const Rule& r) { out.push_back(r); }, cap);
    return out;
}

State draw_output(std::uint64_t seed, const NKey& key, std::span<const State> allowed) {
    if (allowed.empty()) throw Error(ErrorKind::InvalidSpec, "empty family: a key class admits no output");
    return allowed[draw_index(seed, key, allowed.size())];
}

Rule sample_rule(const FamilySpec& spec, std::uint64_t n, int k, std::uint64_t seed) {
    spec.validate(k);
    if (spec.base == Base::SS) throw Error(ErrorKind::Unsupported, "uniform sampling of SS is not supported");
    auto kc = KeyClasses::build(spec, n, k);
    std::vector<State> per_class(kc.keys.size());
    for (std::size_t c = 0; c < kc.keys.size(); ++c) per_class[c] = draw_output(seed, kc.keys[c], kc.allowed[c]);
    std::vector<State> table(kc.class_of.size());
    for (std::size_t idx = 0; idx < table.size(); ++idx) table[idx] = per_class[kc.class_of[idx]];
    return Rule::dense(n, k, std::move(table)).with_id("sample:" + spec.to_string() + ":" + std::to_string(seed));
}

Rule lazy_sampler(const FamilySpec& spec, std::uint64_t n, int k, std::uint64_t seed) {
    spec.validate(k);
    if (spec.base == Base::SS) throw Error(ErrorKind::Unsupported, "lazy sampling of SS is not supported");
    const bool captive = spec.is_captive();
    Rule::Evaluator eval = [spec, n, k, seed, captive](std::span<const State> u) -> State {
        NKey key = family_key(spec, u);
        if (!captive) return draw_index(seed, key, n);
        Word allowed = allowed_outputs(spec, n, k, key);
        return draw_output(seed, key, allowed);
    };
    return Rule::intensional(n, k, std::move(eval), "lazy:" + spec.to_string() + ":" + std::to_string(seed));
}

LemmaCheck verify_ss_subset_captive(std::uint64_t n, int k) {
    LemmaCheck check;
    check.in_hypothesis = k >= 1 && static_cast<std::uint64_t>(k) + 2 <= n;
    check.holds = true;
    const FamilySpec captive{Base::K, std::nullopt, false};
    for_each_member(FamilySpec{Base::SS, std::nullopt, false}, n, k, [&](const Rule& r) {
        ++check.members;
        if (check.holds && !is_member(r, captive)) check.holds = false;
    });
    return check;
}

TotCaptiveCheck verify_tot_captive_empty(std::uint64_t n, int k) {
    TotCaptiveCheck check;
    // Group multisets by sum; a disjoint-support pair with equal sums forces
    // two different outputs on one totalistic class.
    std::map<std::uint64_t, std::vector<Word>> by_sum;
    const BigInt classes = binomial(n + k - 1, k);
    if (classes > kDefaultEnumerationCap) throw Error(ErrorKind::TooLarge, "too many multisets to search");
    for_each_multiset(n, k, [&](const std::vector<int>& counts) {
        Word w = multiset_word(counts);
        std::uint64_t sum = std::accumulate(w.begin(), w.end(), std::uint64_t{0});
        by_sum[sum].push_back(std::move(w));
    });
    for (auto& [sum, words] : by_sum) {
        std::sort(words.begin(), words.end());
        for (std::size_t a = 0; a < words.size() && !check.witness; ++a)
            for (std::size_t b = a + 1; b < words.size(); ++b) {
                if (set_intersection(support_of(words[a]), support_of(words[b])).empty()) {
                    check.witness = std::make_pair(words[a], words[b]);
                    break;
                }
            }
        if (check.witness) break;
    }
    if (check.witness) {
        check.empty = true;
        return check;
    }
    // No pairwise witness: fall back to the exact class intersections.
    for (const auto& [sum, words] : by_sum)
        if (intersect_sum_supports(n, k, sum).empty()) {
            check.empty = true;
            return check;
        }
    check.empty = false;
    return check;
}

}  // namespace symca
