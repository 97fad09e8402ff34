#include "symca/density.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "symca/kernels.hpp"

namespace symca {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::string rational_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r) << '/' << denominator(r);
    return os.str();
}

}  // namespace

bool independence_check(const FamilySpec& family, std::uint64_t n, int k, const std::vector<std::set<NKey>>& key_sets,
                        std::uint64_t cap) {
    if (family.base == Base::SS) throw Error(ErrorKind::Unsupported, "SS is not a key-class family");
    bool disjoint = true;
    std::set<NKey> seen;
    for (const auto& s : key_sets)
        for (const auto& key : s)
            if (!seen.insert(key).second) disjoint = false;
    if (disjoint) return true;

    if (count_family(family, n, k) > cap)
        throw Error(ErrorKind::Inconclusive, "key sets overlap and the family is too large to enumerate");
    const auto kc = KeyClasses::build(family, n, k);
    std::map<NKey, std::size_t> class_of_key;
    for (std::size_t c = 0; c < kc.keys.size(); ++c) class_of_key.emplace(kc.keys[c], c);
    std::vector<std::vector<std::size_t>> parts;
    std::vector<char> touched(kc.keys.size(), 0);
    for (const auto& s : key_sets) {
        std::vector<std::size_t> classes;
        for (const auto& key : s) {
            auto it = class_of_key.find(key);
            if (it == class_of_key.end()) throw Error(ErrorKind::InvalidArg, "key is not a class of this family");
            classes.push_back(it->second);
            touched[it->second] = 1;
        }
        parts.push_back(std::move(classes));
    }
    std::vector<std::size_t> rest;
    for (std::size_t c = 0; c < touched.size(); ++c)
        if (!touched[c]) rest.push_back(c);
    parts.push_back(std::move(rest));

    std::vector<std::set<Word>> images(parts.size());
    std::uint64_t members = 0;
    for_each_member(family, n, k, [&](const Rule& r) {
        ++members;
        for (std::size_t p = 0; p < parts.size(); ++p) {
            Word w;
            for (auto c : parts[p]) w.push_back(r.at_index(kc.min_tuple[c]));
            images[p].insert(std::move(w));
        }
    }, cap);
    BigInt product = 1;
    for (const auto& img : images) product *= img.size();
    return product == members;
}

double bound_lower(std::span<const double> alphas) {
    double log_miss = 0;
    for (double a : alphas) log_miss += std::log1p(-a);
    return -std::expm1(log_miss);
}

double bound_lower(const std::vector<Rational>& alphas) {
    std::vector<double> values;
    values.reserve(alphas.size());
    for (const auto& a : alphas) values.push_back(a.convert_to<double>());
    return bound_lower(values);
}

double bound_lower_repeated(double alpha, double count) { return -std::expm1(count * std::log1p(-alpha)); }

PathSpec PathSpec::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw Error(ErrorKind::InvalidArg, "path needs the form kind:value");
    const std::string kind(text.substr(0, colon));
    const std::string value(text.substr(colon + 1));
    PathSpec p;
    try {
        if (kind == "fixed-k" || kind == "fixed-n") {
            p.kind = kind == "fixed-k" ? Kind::FixedK : Kind::FixedN;
            std::size_t used = 0;
            p.fixed = std::stoull(value, &used);
            if (used != value.size()) throw std::invalid_argument("trailing characters");
            return p;
        }
        if (kind == "list") {
            p.kind = Kind::List;
            std::istringstream in(value);
            for (std::string item; std::getline(in, item, ',');) {
                const auto x = item.find('x');
                if (x == std::string::npos) throw std::invalid_argument("list items are NxK");
                p.list.emplace_back(std::stoull(item.substr(0, x)), std::stoi(item.substr(x + 1)));
            }
            return p;
        }
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::InvalidArg, "malformed path '" + std::string(text) + "'");
    }
    throw Error(ErrorKind::InvalidArg, "unknown path kind '" + kind + "'");
}

std::string PathSpec::to_string() const {
    switch (kind) {
        case Kind::FixedK: return "fixed-k:" + std::to_string(fixed);
        case Kind::FixedN: return "fixed-n:" + std::to_string(fixed);
        case Kind::List: {
            std::string s = "list:";
            for (std::size_t i = 0; i < list.size(); ++i)
                s += (i ? "," : "") + std::to_string(list[i].first) + "x" + std::to_string(list[i].second);
            return s;
        }
    }
    return "";
}

std::optional<std::pair<std::uint64_t, int>> PathSpec::at(std::int64_t x) const {
    if (x < 0) return std::nullopt;
    switch (kind) {
        case Kind::FixedK: return std::make_pair(static_cast<std::uint64_t>(x), static_cast<int>(fixed));
        case Kind::FixedN: return std::make_pair(fixed, static_cast<int>(x));
        case Kind::List:
            if (static_cast<std::size_t>(x) >= list.size()) return std::nullopt;
            return list[x];
    }
    return std::nullopt;
}

std::vector<CurveRow> density_curve(const PathSpec& path, const ConstructionParams& params, const Rule& a0,
                                    std::int64_t x_from, std::int64_t x_to) {
    std::vector<CurveRow> rows;
    for (std::int64_t x = x_from; x <= x_to; ++x) {
        auto size = path.at(x);
        if (!size) continue;
        CurveRow row;
        row.x = x;
        row.n = size->first;
        row.k = size->second;
        row.kind = "out-of-hypothesis";
        const auto js = row.n >= 1 && row.k >= 1 ? subshift_indices(params, a0.n(), a0.k(), row.n, row.k)
                                                 : std::vector<int>{};
        if (js.empty()) {
            rows.push_back(row);
            continue;
        }
        try {
            check_hypotheses(params, a0, row.n, row.k, js.front());
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::OutOfHypothesis) throw;
            rows.push_back(row);
            continue;
        }
        std::set<NKey> used;
        std::vector<Rational> alphas;
        for (int j : js) {
            const auto cs = build_constraints(params, a0, row.n, row.k, j);
            bool clash = false;
            for (const auto& [key, entry] : cs.entries)
                if (used.count(key)) clash = true;
            if (clash) continue;
            for (const auto& [key, entry] : cs.entries) used.insert(key);
            alphas.push_back(exact_alpha(cs));
        }
        row.j_count = alphas.size();
        row.alpha = *std::min_element(alphas.begin(), alphas.end());
        row.bound = bound_lower(alphas);
        row.kind = "lower-bound";
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string curve_csv(const std::vector<CurveRow>& rows) {
    std::ostringstream os;
    os << "x,n,k,j_count,alpha_exact,bound,kind\n";
    os.precision(17);
    for (const auto& r : rows) {
        os << r.x << ',' << r.n << ',' << r.k << ',' << r.j_count << ',' << (r.alpha ? rational_string(*r.alpha) : "")
           << ',' << r.bound << ',' << r.kind << '\n';
    }
    return os.str();
}

std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t samples) {
    if (samples == 0) throw Error(ErrorKind::InvalidArg, "no samples");
    constexpr double z = 1.959963984540054;
    const double nn = static_cast<double>(samples);
    const double p = static_cast<double>(hits) / nn;
    const double denom = 1 + z * z / nn;
    const double centre = (p + z * z / (2 * nn)) / denom;
    const double half = z / denom * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn));
    return {hits == 0 ? 0.0 : std::max(0.0, centre - half), hits == samples ? 1.0 : std::min(1.0, centre + half)};
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) { return mix64(mix64(seed) ^ trial); }

DensityEstimate empirical_density(const FamilySpec& family, std::uint64_t n, int k,
                                  const std::function<bool(const Rule&)>& predicate, std::uint64_t samples,
                                  std::uint64_t seed, bool parallel) {
    if (samples == 0) throw Error(ErrorKind::InvalidArg, "samples must be >= 1");
    family.validate(k);
    const kernels::TrialFn hit = [&](std::uint64_t i) {
        return predicate(lazy_sampler(family, n, k, trial_seed(seed, i)));
    };
    const auto hits = parallel ? kernels::count_hits_parallel(samples, hit) : kernels::count_hits_serial(samples, hit);
    DensityEstimate est;
    est.kind = "monte-carlo";
    est.samples = samples;
    est.hits = hits;
    est.value = static_cast<double>(hits) / static_cast<double>(samples);
    est.ci = wilson_interval(hits, samples);
    return est;
}

Manifest parse_manifest(const std::string& text) {
    Manifest m;
    bool have_path = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string key, value;
        if (!(ls >> key)) continue;
        if (!(ls >> value)) throw Error(ErrorKind::ParseError, "manifest key '" + key + "' has no value");
        try {
            if (key == "construction") m.params.kind = parse_construction(value);
            else if (key == "outer") m.params.outer = std::stoi(value);
            else if (key == "family") m.params.family = FamilySpec::parse(value);
            else if (key == "a0") m.a0_path = value;
            else if (key == "path") {
                m.path = PathSpec::parse(value);
                have_path = true;
            } else if (key == "from") m.from = std::stoll(value);
            else if (key == "to") m.to = std::stoll(value);
            else if (key == "seed") m.seed = std::stoull(value);
            else throw Error(ErrorKind::ParseError, "unknown manifest key '" + key + "'");
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::ParseError, "bad value for manifest key '" + key + "'");
        }
    }
    if (m.a0_path.empty() || !have_path) throw Error(ErrorKind::ParseError, "manifest needs a0 and path");
    return m;
}

std::string serialize_manifest(const Manifest& m) {
    std::ostringstream os;
    os << "construction " << to_string(m.params.kind) << "\nouter " << m.params.outer << '\n';
    if (m.params.family) os << "family " << m.params.family->to_string() << '\n';
    os << "a0 " << m.a0_path << "\npath " << m.path.to_string() << "\nfrom " << m.from << "\nto " << m.to << "\nseed "
       << m.seed << '\n';
    return os.str();
}

}  // namespace symca
