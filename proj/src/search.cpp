#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <sstream>

#include "symca/rescale.hpp"

namespace symca {

namespace {

struct BudgetExhausted {};

class SubSearch {
public:
    SubSearch(const Rule& b, const Rule& a, std::uint64_t budget) : budget_(budget) {
        const int k = std::max(b.k(), a.k());
        b_ = std::make_unique<Rule>(extend_window(b, k));
        a_ = std::make_unique<Rule>(extend_window(a, k));
    }

    std::optional<Word> run() {
        std::vector<std::int64_t> phi(b_->n(), -1);
        std::vector<char> used(a_->n(), 0);
        if (!solve(phi, used)) return std::nullopt;
        return Word(phi.begin(), phi.end());
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    // Forces images of outputs of fully mapped tuples until a fixpoint.
    bool propagate(std::vector<std::int64_t>& phi, std::vector<char>& used) const {
        const int k = b_->k();
        bool changed = true;
        while (changed) {
            changed = false;
            Word assigned;
            for (State s = 0; s < phi.size(); ++s)
                if (phi[s] >= 0) assigned.push_back(s);
            if (assigned.empty()) return true;
            std::vector<std::size_t> digit(k, 0);
            Word u(k), v(k);
            while (true) {
                for (int i = 0; i < k; ++i) {
                    u[i] = assigned[digit[i]];
                    v[i] = static_cast<State>(phi[u[i]]);
                }
                const State out = (*b_)(u);
                const State target = (*a_)(v);
                if (phi[out] >= 0) {
                    if (static_cast<State>(phi[out]) != target) return false;
                } else {
                    if (target >= used.size() || used[target]) return false;
                    phi[out] = static_cast<std::int64_t>(target);
                    used[target] = 1;
                    changed = true;
                    break;
                }
                int pos = k - 1;
                while (pos >= 0 && ++digit[pos] == assigned.size()) digit[pos--] = 0;
                if (pos < 0) break;
            }
        }
        return true;
    }

    bool solve(std::vector<std::int64_t>& phi, std::vector<char>& used) {
        if (!propagate(phi, used)) return false;
        auto free = std::find(phi.begin(), phi.end(), -1);
        if (free == phi.end()) return true;
        for (State target = 0; target < used.size(); ++target) {
            if (used[target]) continue;
            if (++nodes_ > budget_) throw BudgetExhausted{};
            auto phi2 = phi;
            auto used2 = used;
            phi2[free - phi.begin()] = static_cast<std::int64_t>(target);
            used2[target] = 1;
            if (solve(phi2, used2)) {
                phi = std::move(phi2);
                return true;
            }
        }
        return false;
    }

    std::unique_ptr<Rule> b_;
    std::unique_ptr<Rule> a_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
};

using ParamKey = std::tuple<int, int, std::int64_t>;

struct Candidate {
    SimWitness w;
    std::uint64_t cost;
    auto lex() const { return std::make_tuple(w.p1.m, w.p1.t, w.p1.z, w.p2.m, w.p2.t, w.p2.z); }
};

PConfig encode_config(const PConfig& c, const Rule& b, const Rule& a, const SimWitness& w) {
    PConfig packed = pack(c, b.n(), w.p1.m);
    Word mapped(packed.period());
    for (std::size_t i = 0; i < mapped.size(); ++i) mapped[i] = w.phi[packed.word()[i]];
    return unpack(PConfig(std::move(mapped)), a.n(), w.p2.m);
}

PConfig advance(const Rule& rule, PConfig c, const RescaleParams& p) {
    for (int s = 0; s < p.t; ++s) c = step(rule, c);
    return c.shifted(p.z);
}

}  // namespace

const char* to_string(SearchStatus status) {
    switch (status) {
        case SearchStatus::Found: return "found";
        case SearchStatus::None: return "none";
        case SearchStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::uint64_t SimWitness::cost() const {
    return std::uint64_t(p1.m) * p2.m * p1.t * p2.t * (1 + std::llabs(p1.z) + std::llabs(p2.z));
}

SubResult find_subautomaton(const Rule& b, const Rule& a, std::uint64_t node_budget) {
    SubResult result;
    if (b.n() > a.n()) return result;
    SubSearch search(b, a, node_budget);
    try {
        auto phi = search.run();
        if (phi) {
            result.status = SearchStatus::Found;
            result.phi = std::move(*phi);
        }
    } catch (const BudgetExhausted&) {
        result.status = SearchStatus::Inconclusive;
    }
    result.nodes = search.nodes();
    return result;
}

bool dynamic_check(const Rule& b, const Rule& a, const SimWitness& w, int configs, int steps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < configs; ++i) {
        const std::size_t period = w.p1.m * std::uniform_int_distribution<std::size_t>(1, 4)(rng);
        Word cells(period);
        std::uniform_int_distribution<State> symbol(0, b.n() - 1);
        for (auto& s : cells) s = symbol(rng);
        PConfig c(std::move(cells));
        PConfig d = encode_config(c, b, a, w);
        for (int s = 0; s < steps; ++s) {
            c = advance(b, c, w.p1);
            d = advance(a, d, w.p2);
            if (!same_configuration(d, encode_config(c, b, a, w))) return false;
        }
    }
    return true;
}

SimResult search_simulation(const Rule& b, const Rule& a, const SimBounds& bounds) {
    std::vector<Candidate> all;
    for (int m1 = 1; m1 <= bounds.m1; ++m1)
        for (int t1 = 1; t1 <= bounds.t1; ++t1)
            for (std::int64_t z1 = -bounds.z1; z1 <= bounds.z1; ++z1)
                for (int m2 = 1; m2 <= bounds.m2; ++m2)
                    for (int t2 = 1; t2 <= bounds.t2; ++t2)
                        for (std::int64_t z2 = -bounds.z2; z2 <= bounds.z2; ++z2) {
                            Candidate c{SimWitness{{m1, t1, z1}, {m2, t2, z2}, {}}, 0};
                            c.cost = c.w.cost();
                            all.push_back(std::move(c));
                        }
    std::sort(all.begin(), all.end(), [](const Candidate& x, const Candidate& y) {
        return std::make_pair(x.cost, x.lex()) < std::make_pair(y.cost, y.lex());
    });

    std::map<ParamKey, std::optional<Rule>> cache_b, cache_a;
    auto rescaled = [](std::map<ParamKey, std::optional<Rule>>& cache, const Rule& r, const RescaleParams& p) {
        ParamKey key{p.m, p.t, p.z};
        auto it = cache.find(key);
        if (it == cache.end()) {
            std::optional<Rule> value;
            try {
                value = rescale_rule(r, p);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::TooLarge) throw;
            }
            it = cache.emplace(key, std::move(value)).first;
        }
        return it->second;
    };

    SimResult result;
    bool inconclusive = false;
    for (std::size_t start = 0; start < all.size();) {
        std::size_t end = start;
        while (end < all.size() && all[end].cost == all[start].cost) ++end;

        std::vector<std::optional<Rule>> rb(end - start), ra(end - start);
        for (std::size_t i = start; i < end; ++i) {
            rb[i - start] = rescaled(cache_b, b, all[i].w.p1);
            ra[i - start] = rescaled(cache_a, a, all[i].w.p2);
        }
        std::vector<SubResult> found(end - start);
        const auto level = static_cast<std::int64_t>(end - start);
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < level; ++i) {
            if (!rb[i] || !ra[i]) {
                found[i].status = SearchStatus::Inconclusive;
                continue;
            }
            try {
                found[i] = find_subautomaton(*rb[i], *ra[i], bounds.node_budget);
            } catch (const Error&) {
                found[i].status = SearchStatus::Inconclusive;
            }
        }
        result.probes += end - start;
        for (std::size_t i = 0; i < found.size(); ++i) {
            if (found[i].status == SearchStatus::Inconclusive) inconclusive = true;
            if (found[i].status != SearchStatus::Found) continue;
            SimWitness w = all[start + i].w;
            w.phi = found[i].phi;
            if (!verify_commutation(*rb[i], *ra[i], w.phi)) continue;
            if (!dynamic_check(b, a, w, 10, 5, bounds.seed)) continue;
            result.status = SearchStatus::Found;
            result.witness = std::move(w);
            return result;
        }
        start = end;
    }
    result.status = inconclusive ? SearchStatus::Inconclusive : SearchStatus::None;
    return result;
}

std::string serialize_witness(const SimWitness& w) {
    std::ostringstream os;
    os << "params " << w.p1.m << ' ' << w.p1.t << ' ' << w.p1.z << ' ' << w.p2.m << ' ' << w.p2.t << ' ' << w.p2.z
       << '\n';
    for (std::size_t s = 0; s < w.phi.size(); ++s) os << "map " << s << ' ' << w.phi[s] << '\n';
    return os.str();
}

SimWitness parse_witness(const std::string& text) {
    std::istringstream in(text);
    SimWitness w;
    bool have_params = false;
    std::map<State, State> pairs;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "params") {
            if (!(ls >> w.p1.m >> w.p1.t >> w.p1.z >> w.p2.m >> w.p2.t >> w.p2.z))
                throw Error(ErrorKind::ParseError, "params needs six integers");
            if (w.p1.m < 1 || w.p1.t < 1 || w.p2.m < 1 || w.p2.t < 1)
                throw Error(ErrorKind::ParseError, "m and t must be >= 1");
            have_params = true;
        } else if (key == "map") {
            State from = 0, to = 0;
            if (!(ls >> from >> to)) throw Error(ErrorKind::ParseError, "map needs two states");
            if (!pairs.emplace(from, to).second) throw Error(ErrorKind::ParseError, "state mapped twice");
        } else {
            throw Error(ErrorKind::ParseError, "unknown witness field '" + key + "'");
        }
    }
    if (!have_params) throw Error(ErrorKind::ParseError, "witness has no params line");
    for (const auto& [from, to] : pairs) {
        if (from != w.phi.size()) throw Error(ErrorKind::ParseError, "map must cover states 0..n-1");
        w.phi.push_back(to);
    }
    return w;
}

std::set<Word> witness_support(const SimWitness& w, const Rule& b, const Rule& a, int length, std::uint64_t cap) {
    if (length < 1) throw Error(ErrorKind::InvalidArg, "word length must be >= 1");
    const int m2 = w.p2.m;
    auto states = checked_pow(b.n(), w.p1.m);
    if (!states || *states != w.phi.size()) throw Error(ErrorKind::InvalidArg, "witness map does not match B");
    const int blocks = (m2 - 1 + length + m2 - 1) / m2;
    auto sequences = checked_pow(*states, blocks);
    if (!sequences || *sequences > cap) throw Error(ErrorKind::TooLarge, "too many block sequences");
    std::vector<Word> image(*states);
    for (State s = 0; s < *states; ++s) image[s] = unpack_block(w.phi[s], a.n(), m2);
    std::set<Word> out;
    Word cells;
    for (std::uint64_t seq = 0; seq < *sequences; ++seq) {
        cells.clear();
        std::uint64_t rest = seq;
        for (int i = 0; i < blocks; ++i) {
            const auto& img = image[rest % *states];
            rest /= *states;
            cells.insert(cells.end(), img.begin(), img.end());
        }
        for (int o = 0; o < m2 && o + length <= static_cast<int>(cells.size()); ++o)
            out.emplace(cells.begin() + o, cells.begin() + o + length);
    }
    return out;
}

}  // namespace symca
