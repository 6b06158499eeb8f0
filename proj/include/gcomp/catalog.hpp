#pragma once

#include "gcomp/frameworks.hpp"

#include <array>
#include <map>
#include <tuple>

namespace gcomp {

// =============================================================================
// Symmetric functions
// =============================================================================

inline std::vector<ProgramRef> bit_leaves(int n) {
    std::vector<ProgramRef> out;
    for (int i = 0; i < n; ++i) out.push_back(leaf(Predicate::bit(i)));
    return out;
}

inline ProgramRef threshold_program(int n, int k) {
    if (n < 1 || n > 12) throw InputError("threshold graphs are built for 1 <= n <= 12");
    if (k < 1 || k > n) throw InputError("threshold needs 1 <= k <= n");
    return threshold_over(bit_leaves(n), k);
}

inline CompositionGraph threshold(int n, int k) { return as_composition(threshold_program(n, k)); }

/// Closed forms: w+ = 1/(|x|-k+1), w- = k(n-k+1)/(k-|x|).
inline WitnessPair threshold_closed_form(int n, int k, int weight) {
    WitnessPair w;
    w.positive = weight >= k;
    if (w.positive)
        w.w_plus = 1.0 / (weight - k + 1);
    else
        w.w_minus = static_cast<double>(k) * (n - k + 1) / (k - weight);
    return w;
}

/// The stated complexity formula sqrt(k(n+k-1)).
inline double threshold_stated_complexity(int n, int k) { return std::sqrt(static_cast<double>(k) * (n + k - 1)); }

/// Witness sizes of Th^k_n at Hamming weight w through the series/parallel laws
/// applied to the recursion, one state per (size, k, weight).
inline WitnessPair threshold_symmetric(int n, int k, int weight) {
    if (k < 1 || k > n || weight < 0 || weight > n) throw InputError("threshold parameters out of range");
    std::map<std::tuple<int, int, int>, WitnessPair> memo;
    std::function<WitnessPair(int, int, int)> th = [&](int N, int K, int W) -> WitnessPair {
        auto key = std::make_tuple(N, K, W);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        WitnessPair out;
        // branch j with x_j = b: leaf (b) in series with (K-1) Th^{K-1}_{N-1} at weight W - b
        std::vector<std::pair<WitnessPair, int>> branches;  // (value, multiplicity)
        for (int b = 0; b < 2; ++b) {
            const int mult = b ? W : N - W;
            if (!mult) continue;
            WitnessPair lf;
            lf.positive = b == 1;
            (b ? lf.w_plus : lf.w_minus) = 1.0;
            if (K == 1) {
                branches.push_back({lf, mult});
                continue;
            }
            WitnessPair rest = th(N - 1, K - 1, W - b);
            rest.w_plus *= K - 1;
            rest.w_minus /= K - 1;
            WitnessPair ser;
            ser.positive = lf.positive && rest.positive;
            if (ser.positive) {
                ser.w_plus = lf.w_plus + rest.w_plus;
            } else {
                double r = 0.0;
                if (!lf.positive) r += 1.0 / lf.w_minus;
                if (!rest.positive) r += 1.0 / rest.w_minus;
                ser.w_minus = 1.0 / r;
            }
            branches.push_back({ser, mult});
        }
        out.positive = std::any_of(branches.begin(), branches.end(), [](auto& b) { return b.first.positive; });
        double acc = 0.0;
        for (const auto& [v, mult] : branches) {
            if (out.positive && v.positive) acc += mult / v.w_plus;
            if (!out.positive) acc += mult * v.w_minus;
        }
        if (out.positive)
            out.w_plus = 1.0 / acc;
        else
            out.w_minus = acc;
        memo.emplace(key, out);
        return out;
    };
    return th(n, k, weight);
}

/// k(n-k+1) Th^k AND NOT Th^{k+1}.
inline ProgramRef exact_weight_program(int n, int k) {
    if (k < 1 || k > n - 1) throw InputError("exact weight needs 1 <= k <= n-1");
    if (n > 12) throw InputError("exact-weight graphs are built for n <= 12");
    auto leaves = bit_leaves(n);
    const double scale = static_cast<double>(k) * (n - k + 1);
    return graph_program(and_compose({scaled(scale, threshold_over(leaves, k)), negated(threshold_over(leaves, k + 1))}));
}

inline CompositionGraph exact_weight(int n, int k) { return as_composition(exact_weight_program(n, k)); }

inline WitnessPair exact_weight_closed_form(int n, int k, int weight) {
    WitnessPair w;
    w.positive = weight == k;
    if (w.positive)
        w.w_plus = n + 2.0 * k * (n - k);
    else
        w.w_minus = 1.0 / std::abs(k - weight);
    return w;
}

inline bool gapped_majority_promise(int n, int weight) { return 3 * weight < n || 3 * weight > 2 * n; }

inline ProgramRef gapped_majority_program(int n) {
    if (n < 2 || n % 2) throw InputError("gapped majority needs even n");
    return threshold_program(n, n / 2);
}

inline CompositionGraph gapped_majority(int n) { return as_composition(gapped_majority_program(n)); }

struct GappedMajorityBounds {
    double w_plus = 0.0;
    double w_minus = 0.0;
};

/// W+ and W- over the promise domain, from the symmetric recursion.
inline GappedMajorityBounds gapped_majority_bounds(int n) {
    if (n < 2 || n % 2) throw InputError("gapped majority needs even n");
    GappedMajorityBounds b;
    for (int w = 0; w <= n; ++w) {
        if (!gapped_majority_promise(n, w)) continue;
        const auto v = threshold_symmetric(n, n / 2, w);
        if (v.positive)
            b.w_plus = std::max(b.w_plus, v.w_plus);
        else
            b.w_minus = std::max(b.w_minus, v.w_minus);
    }
    return b;
}

// =============================================================================
// Network builder for the string constructions
// =============================================================================

namespace detail {
struct Builder {
    ResistorNetwork net;
    std::vector<ProgramRef> ps;
    int s, t;

    Builder() {
        s = net.add_vertex("s");
        t = net.add_vertex("t");
        net.set_terminals(s, t);
    }
    int vertex() { return net.add_vertex("u" + std::to_string(net.num_vertices() - 1)); }
    void edge(int a, int b, ProgramRef p) {
        net.add_edge("e" + std::to_string(ps.size() + 1), a, b);
        ps.push_back(std::move(p));
    }
    void edge(int a, int b, Predicate pr, double w = 1.0) { edge(a, b, leaf(pr, w)); }
    bool empty() const { return ps.empty(); }
    CompositionGraph done() { return CompositionGraph(std::move(net), std::move(ps)); }
};

inline ProgramRef chain_program(const std::vector<ProgramRef>& ps) { return graph_program(and_compose(ps)); }
}  // namespace detail

// =============================================================================
// Pattern matching
// =============================================================================

/// Smallest p >= 1 with y_{l+p} = y_l wherever both exist; m if none.
inline int minimal_period(const std::string& y) {
    const int m = static_cast<int>(y.size());
    for (int p = 1; p < m; ++p) {
        bool ok = true;
        for (int l = 0; l + p < m && ok; ++l) ok = y[l] == y[l + p];
        if (ok) return p;
    }
    return m;
}

/// No period p <= m/2.
inline bool is_aperiodic(const std::string& y) { return 2 * minimal_period(y) > static_cast<int>(y.size()); }

struct DeterministicSample {
    std::vector<int> J;  ///< 0-based positions in y
    int k = 0;
};

/// Every nonzero shift l in [-k, floor(m/2) - k] is refuted by some q in J: y_q != y_{q-l}.
inline bool deterministic_sample_holds(const std::string& y, const DeterministicSample& ds) {
    const int m = static_cast<int>(y.size());
    for (int l = -ds.k; l <= m / 2 - ds.k; ++l) {
        if (l == 0) continue;
        bool killed = false;
        for (int q : ds.J) {
            const int r = q - l;
            if (r >= 0 && r < m && y[r] != y[q]) {
                killed = true;
                break;
            }
        }
        if (!killed) return false;
    }
    return true;
}

/// Smallest sample found by exhaustive search over sets of increasing size.
inline DeterministicSample deterministic_sample(const std::string& y) {
    const int m = static_cast<int>(y.size());
    if (m == 0) throw InputError("empty pattern");
    if (!is_aperiodic(y)) throw InputError("pattern '" + y + "' is periodic");
    for (int size = 0; size <= m; ++size) {
        std::vector<int> J(size);
        std::function<bool(int, int)> pick = [&](int pos, int from) -> bool {
            if (pos == size) {
                for (int k = 0; k <= m / 2; ++k)
                    if (deterministic_sample_holds(y, {J, k})) return true;
                return false;
            }
            for (int q = from; q < m; ++q) {
                J[pos] = q;
                if (pick(pos + 1, q + 1)) return true;
            }
            return false;
        };
        if (pick(0, 0)) {
            for (int k = 0; k <= m / 2; ++k)
                if (deterministic_sample_holds(y, {J, k})) return {J, k};
        }
    }
    throw InputError("no deterministic sample found");
}

inline bool pattern_oracle(const Input& x, const std::string& y) { return x.find(y) != std::string::npos; }

struct PatternInfo {
    int period = 0;
    bool periodic = false;
    DeterministicSample sample;  ///< for y, or for one period of y
    int anchors = 0;
};

namespace detail {
inline ProgramRef match_chain(const std::string& y, int start, const std::vector<int>& pos, double w) {
    std::vector<ProgramRef> ps;
    for (int q : pos) ps.push_back(leaf(Predicate::char_eq(start + q, y[q]), w));
    return chain_program(ps);
}

inline std::vector<int> iota_vec(int a, int b) {
    std::vector<int> v;
    for (int i = a; i < b; ++i) v.push_back(i);
    return v;
}
}  // namespace detail

/// Parallel over anchors i of (sample check, full check) in series; periodic patterns
/// anchor one period near every block start and walk back period by period.
inline CompositionGraph pattern_matching(int n, const std::string& y, PatternInfo* info = nullptr) {
    const int m = static_cast<int>(y.size());
    if (m == 0 || m > n) throw InputError("pattern matching needs 1 <= m <= n");
    const int p = minimal_period(y);
    const bool periodic = 2 * p <= m;
    PatternInfo pi;
    pi.period = p;
    pi.periodic = periodic;
    detail::Builder B;
    if (!periodic) {
        pi.sample = deterministic_sample(y);
        for (int i = 0; i + m <= n; ++i) {
            int at = B.s;
            for (int q : pi.sample.J) {
                const int nx = B.vertex();
                B.edge(at, nx, Predicate::char_eq(i + q, y[q]));
                at = nx;
            }
            for (int q = 0; q < m; ++q) {
                const int nx = q + 1 == m ? B.t : B.vertex();
                B.edge(at, nx, Predicate::char_eq(i + q, y[q]), 1.0 / m);
                at = nx;
            }
            ++pi.anchors;
        }
        if (info) *info = pi;
        return B.done();
    }
    const std::string ybar = y.substr(0, p);
    if (is_aperiodic(ybar))
        pi.sample = deterministic_sample(ybar);
    else
        pi.sample = {detail::iota_vec(0, p), 0};
    const int k = (m + p - 1) / p;
    const int R = m / p - 1;
    const int padded = (n + m - 1) / m * m;  // positions >= n read as the sentinel
    std::map<int, ProgramRef> period_memo;
    auto period = [&](int q) {
        auto it = period_memo.find(q);
        if (it != period_memo.end()) return it->second;
        auto pr = detail::match_chain(ybar, q, detail::iota_vec(0, p), 1.0 / p);
        period_memo.emplace(q, pr);
        return pr;
    };
    std::set<int> anchors;
    for (int b = 0; b < padded; b += m)
        for (int i = b - 2 * p + 1; i <= b + p - 1; ++i)
            if (i >= 0 && i + p <= n) anchors.insert(i);
    for (int i : anchors) {
        int at = B.s;
        for (int q : pi.sample.J) {
            const int nx = B.vertex();
            B.edge(at, nx, Predicate::char_eq(i + q, ybar[q]));
            at = nx;
        }
        const int u0 = B.vertex();
        B.edge(at, u0, period(i));
        int u = u0;
        for (int r = 0; r <= R; ++r) {
            const int a = i - r * p;
            const int first = (r + 1) * p;
            const int w = first < m ? B.vertex() : B.t;
            B.edge(u, w, negated(scaled(p, period(i - (r + 1) * p))));
            if (first < m) B.edge(w, B.t, detail::match_chain(y, a, detail::iota_vec(first, m), 1.0 / m));
            if (r < R) {
                const int nu = B.vertex();
                B.edge(u, nu, scaled(1.0 / k, period(i - (r + 1) * p)));
                u = nu;
            }
        }
        ++pi.anchors;
    }
    if (info) *info = pi;
    return B.done();
}

// =============================================================================
// OR of pSEARCH
// =============================================================================

/// m blocks of length n over {0,1,*}, concatenated.
inline CompositionGraph or_psearch(int n, int m) {
    if (n < 1 || m < 1) throw InputError("or-psearch needs n, m >= 1");
    detail::Builder B;
    for (int i = 0; i < m; ++i) {
        const int o = i * n;
        int at = B.s;
        for (int j = 1; j <= n; ++j) {
            B.edge(at, B.t, Predicate::char_eq(o + j - 1, '1'));
            if (j < n) {
                const int nx = B.vertex();
                B.edge(at, nx, Predicate::char_eq(o + j - 1, '*'), 1.0 / j);
                at = nx;
            }
        }
    }
    return B.done();
}

/// Position of the non-* symbol of each block, or -1 if the promise fails.
inline std::vector<int> psearch_positions(const Input& x, int n, int m) {
    std::vector<int> out;
    for (int i = 0; i < m; ++i) {
        int pos = -1;
        for (int j = 0; j < n; ++j)
            if (x[i * n + j] != '*') {
                if (pos >= 0) return {};
                pos = j;
            }
        if (pos < 0) return {};
        out.push_back(pos + 1);
    }
    return out;
}

inline bool psearch_oracle(const Input& x, int n, int m) {
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (x[i * n + j] == '1') return true;
    return false;
}

/// Random promise instance with offsets summing to T and at most one 1.
template <class Rng>
Input psearch_instance(int n, int m, int T, bool positive, Rng& rng) {
    if (T < m || T > n * m) throw InputError("T must lie in [m, nm]");
    std::vector<int> j(m, 1);
    int left = T - m;
    while (left > 0) {
        const int i = static_cast<int>(rng() % m);
        if (j[i] < n) {
            ++j[i];
            --left;
        }
    }
    Input x(static_cast<std::size_t>(n) * m, '*');
    for (int i = 0; i < m; ++i) x[i * n + j[i] - 1] = '0';
    if (positive) {
        const int i = static_cast<int>(rng() % m);
        x[i * n + j[i] - 1] = '1';
    }
    return x;
}

// =============================================================================
// Sigma* 2 0* 2 Sigma*
// =============================================================================

inline CompositionGraph sigma202(int n) {
    if (n < 2) throw InputError("sigma202 needs n >= 2");
    detail::Builder B;
    for (int i = 0; i + 1 < n; ++i) {
        int at = B.vertex();
        B.edge(B.s, at, Predicate::char_eq(i, '2'));
        for (int k = 1; i + k < n; ++k) {
            B.edge(at, B.t, Predicate::char_eq(i + k, '2'));
            if (i + k + 1 < n) {
                const int nx = B.vertex();
                B.edge(at, nx, Predicate::char_eq(i + k, '0'), 1.0 / k);
                at = nx;
            }
        }
    }
    return B.done();
}

inline bool sigma202_oracle(const Input& x) {
    int last2 = -1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == '2') {
            if (last2 >= 0) return true;
            last2 = static_cast<int>(i);
        } else if (x[i] != '0') {
            last2 = -1;
        }
    }
    return false;
}

// =============================================================================
// Dyck languages
// =============================================================================

inline bool dyck_oracle(const Input& x, int depth) {
    int h = 0;
    for (char c : x) {
        h += c == '(' ? 1 : -1;
        if (h < 0 || h > depth) return false;
    }
    return h == 0;
}

namespace detail {
/// 1-based position P and bracket c, optionally read on the reversed and flipped string.
struct DyckView {
    int n;
    bool mirror;
    Predicate at(int P, char c) const {
        if (!mirror) return Predicate::char_eq(P - 1, c);
        return Predicate::char_eq(n - P, c == '(' ? ')' : '(');
    }
};

inline void dyck_cond1(Builder& B, const DyckView& v) {
    const int n = v.n;
    int at = B.s;
    for (int r = 0; r <= n / 2 - 1; ++r) {
        B.edge(at, B.t, v.at(2 * r + 1, ')'));
        if (r <= n / 2 - 2) {
            const double w = 1.0 / (r + 1);
            const int a = B.vertex(), c = B.vertex();
            B.edge(at, a, v.at(2 * r + 1, '('), w);
            B.edge(a, c, v.at(2 * r + 2, ')'), w);
            at = c;
        }
    }
}

inline void dyck_cond3(Builder& B, const DyckView& v) {
    const int n = v.n;
    for (int j = 2; j <= n - 2; j += 2) {
        const int b1 = B.vertex(), d0 = B.vertex();
        B.edge(B.s, b1, v.at(j, '('));
        B.edge(b1, d0, v.at(j + 1, '('));
        int d = d0;
        B.edge(d, B.t, v.at(j + 2, '('));
        const int R = (n - j - 2) / 2;
        for (int r = 1; r <= R; ++r) {
            const double w = 1.0 / r;
            const int e = B.vertex(), nd = B.vertex();
            B.edge(d, e, v.at(j + 2 * r, ')'), w);
            B.edge(e, nd, v.at(j + 2 * r + 1, '('), w);
            d = nd;
            B.edge(d, B.t, v.at(j + 2 * r + 2, '('));
        }
    }
}
}  // namespace detail

/// The four graphs P1..P4 detecting each failure condition; missing ones are null.
inline std::array<ProgramRef, 4> dyck3_condition_programs(int n) {
    std::array<ProgramRef, 4> out{};
    for (int c = 0; c < 4; ++c) {
        detail::Builder B;
        const detail::DyckView v{n, c == 1 || c == 3};
        if (c < 2)
            detail::dyck_cond1(B, v);
        else
            detail::dyck_cond3(B, v);
        if (!B.empty()) out[c] = graph_program(B.done());
    }
    return out;
}

inline CompositionGraph dyck(int n, int depth) {
    if (n < 2 || n % 2) throw InputError("Dyck recognition needs even n >= 2");
    detail::Builder B;
    if (depth == 1) {
        int at = B.s;
        for (int P = 1; P <= n; ++P) {
            const int nx = P == n ? B.t : B.vertex();
            B.edge(at, nx, Predicate::char_eq(P - 1, P % 2 ? '(' : ')'));
            at = nx;
        }
        return B.done();
    }
    if (depth == 2) {
        int at = B.vertex();
        B.edge(B.s, at, Predicate::char_eq(0, '('));
        for (int P = 2; P + 1 < n; P += 2) {
            const int lo = B.vertex(), hi = B.vertex(), nx = B.vertex();
            B.edge(at, lo, Predicate::char_eq(P - 1, ')'));
            B.edge(lo, nx, Predicate::char_eq(P, '('));
            B.edge(at, hi, Predicate::char_eq(P - 1, '('));
            B.edge(hi, nx, Predicate::char_eq(P, ')'));
            at = nx;
        }
        B.edge(at, B.t, Predicate::char_eq(n - 1, ')'));
        return B.done();
    }
    if (depth != 3) throw InputError("Dyck depth must be 1, 2 or 3");
    std::vector<ProgramRef> kids;
    for (const auto& p : dyck3_condition_programs(n))
        if (p) kids.push_back(negated(p));
    return and_compose(kids);
}

/// The four conditions characterizing strings outside the depth-3 language.
inline std::array<bool, 4> dyck3_conditions(const Input& x) {
    const int n = static_cast<int>(x.size());
    auto X = [&](int P) { return x[P - 1]; };
    std::array<bool, 4> c{};
    for (int j = 1; j <= n; j += 2) {
        if (X(j) != ')') continue;
        bool ok = true;
        for (int k = 1; k < j && ok; ++k) ok = (X(k) == ')') == (k % 2 == 0);
        if (ok) c[0] = true;
    }
    for (int j = 2; j <= n; j += 2) {
        if (X(j) != '(') continue;
        bool ok = true;
        for (int k = j + 1; k <= n && ok; ++k) ok = (X(k) == '(') == (k % 2 == 1);
        if (ok) c[1] = true;
    }
    for (int j = 2; j <= n; j += 2)
        for (int k = j + 1; k + 1 <= n; k += 2) {
            if (X(j) != '(' || X(k + 1) != '(') continue;
            bool ok = true;
            for (int l = j + 1; l <= k && ok; ++l) ok = (X(l) == '(') == (l % 2 == 1);
            if (ok) c[2] = true;
        }
    for (int j = 1; j <= n; j += 2)
        for (int k = j + 1; k + 1 <= n; k += 2) {
            if (X(j) != ')' || X(k + 1) != ')') continue;
            bool ok = true;
            for (int l = j + 1; l <= k && ok; ++l) ok = (X(l) == ')') == (l % 2 == 0);
            if (ok) c[3] = true;
        }
    return c;
}

// =============================================================================
// 3-increasing subsequence
// =============================================================================

inline CompositionGraph inc_subseq_3(int n) {
    if (n < 3) throw InputError("3-increasing subsequence needs n >= 3");
    detail::Builder B;
    for (int i = 0; i + 2 < n; ++i) {
        int c = B.vertex();
        B.edge(B.s, c, Predicate::less(i, i + 1));
        for (int l = 1; i + l + 1 < n; ++l) {
            const int k = i + l + 1;
            const int d = B.vertex();
            B.edge(c, d, Predicate::less(i + l, k));
            std::vector<ProgramRef> mids;
            for (int j = i + 1; j <= i + l; ++j)
                mids.push_back(graph_program(and_compose({leaf(Predicate::less(i, j)), leaf(Predicate::less(j, k))})));
            B.edge(d, B.t, graph_program(or_compose(mids)));
            if (k + 1 < n) {
                const int nc = B.vertex();
                B.edge(c, nc, Predicate::greater_eq(i + l, k), 1.0 / l);
                c = nc;
            }
        }
    }
    return B.done();
}

inline bool inc_subseq_3_oracle(const Input& x) {
    const int n = static_cast<int>(x.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (x[i] < x[j])
                for (int k = j + 1; k < n; ++k)
                    if (x[j] < x[k]) return true;
    return false;
}

/// Every minimal-extent triple (i,j,k) has x_i < x_{i+1}, x_{k-1} < x_k and a
/// non-increasing run in between. Vacuous without a triple.
inline bool inc_subseq_3_lemma_holds(const Input& x) {
    const int n = static_cast<int>(x.size());
    int best = n + 1;
    std::vector<std::array<int, 3>> triples;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if (x[i] < x[j] && x[j] < x[k]) {
                    if (k - i < best) {
                        best = k - i;
                        triples.clear();
                    }
                    if (k - i == best) triples.push_back({i, j, k});
                }
    for (const auto& [i, j, k] : triples) {
        if (!(x[i] < x[i + 1]) || !(x[k - 1] < x[k])) return false;
        for (int l = i + 1; l <= k - 2; ++l)
            if (!(x[l] >= x[l + 1])) return false;
    }
    return true;
}

// =============================================================================
// Scaling fits
// =============================================================================

struct ScalingFit {
    double a = 0.0, b = 0.0;      ///< w ~ a + b log n
    double rms_log = 0.0;
    double c = 0.0, d = 0.0;      ///< w ~ c + d n
    double rms_linear = 0.0;
    bool log_preferred() const { return rms_log <= rms_linear + 1e-12; }
};

inline ScalingFit fit_scaling(const std::vector<double>& ns, const std::vector<double>& ws) {
    if (ns.size() != ws.size() || ns.size() < 2) throw InputError("scaling fit needs matching samples");
    auto fit = [&](auto feature, double& a, double& b) {
        const Index N = static_cast<Index>(ns.size());
        Mat A(N, 2);
        Vec y(N);
        for (Index i = 0; i < N; ++i) {
            A(i, 0) = 1.0;
            A(i, 1) = feature(ns[i]);
            y(i) = ws[i];
        }
        const Vec c = A.colPivHouseholderQr().solve(y);
        a = c(0);
        b = c(1);
        return std::sqrt((A * c - y).squaredNorm() / N);
    };
    ScalingFit f;
    f.rms_log = fit([](double n) { return std::log(n); }, f.a, f.b);
    f.rms_linear = fit([](double n) { return n; }, f.c, f.d);
    return f;
}

}  // namespace gcomp
