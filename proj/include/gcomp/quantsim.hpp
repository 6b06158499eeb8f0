#pragma once

#include "gcomp/decomp.hpp"
#include "gcomp/graphcomp.hpp"
#include "gcomp/spanprog.hpp"

#include <complex>
#include <functional>

namespace gcomp {

using CVec = Eigen::VectorXcd;

/// 2 Pi_Q - I for orthonormal columns Q.
inline Mat reflection_through(const Mat& Q, Index n) {
    Mat R = -Mat::Identity(n, n);
    if (Q.cols()) R += 2.0 * Q * Q.transpose();
    return R;
}

/// Orthogonal Householder map sending e_from to the unit vector `to`.
inline Mat householder_to(Index n, Index from, const Vec& to) {
    Vec e = Vec::Zero(n);
    e(from) = 1.0;
    const Vec v = e - to;
    if (v.norm() < 1e-14) return Mat::Identity(n, n);
    return Mat::Identity(n, n) - 2.0 * v * v.transpose() / v.squaredNorm();
}

// =============================================================================
// Reflections of a graph composition
// =============================================================================

struct CompositionReflections {
    Mat r_h;        ///< 2 Pi_{H(x)} - I, assembled block by block
    Mat r_k;        ///< -Rbar_K (E R_C E^T - (I - E E^T))
    Mat c_w0;       ///< unitary sending basis state 0 to w0/|w0|
    Mat r_k_direct; ///< 2 Pi_K - I from the composed program, for comparison
    Mat r_h_direct;
    Vec w0;
};

inline CompositionReflections build_reflections(const CompositionGraph& cg, const Input& x,
                                                int max_dim = kDefaultMaxDim) {
    const int m = cg.num_edges();
    std::vector<SpanProgram> kids;
    std::vector<int> off(m + 1, 0);
    for (int e = 0; e < m; ++e) {
        off[e + 1] = off[e] + cg.programs[e]->dim;
        if (off[e + 1] > max_dim) throw InputError("composed dimension exceeds the cap");
    }
    for (int e = 0; e < m; ++e) kids.push_back(materialize(cg.programs[e], max_dim));
    const int n = off[m];

    CompositionReflections out;
    out.r_h = Mat::Zero(n, n);
    Mat rbar_k = Mat::Zero(n, n);
    Mat E = Mat::Zero(n, m);
    for (int e = 0; e < m; ++e) {
        const int d = kids[e].dim();
        out.r_h.block(off[e], off[e], d, d) = reflection_through(kids[e].hx_basis(x), d);
        rbar_k.block(off[e], off[e], d, d) = reflection_through(kids[e].k_basis(), d);
        E.block(off[e], e, d, 1) = kids[e].w0().normalized();
    }
    const auto refl = reflection_from_decomposition(cg.net, auto_decompose(cg.net));
    const Mat r_c = -refl.reflection;  // 2 Pi_C - I on the edge space
    const Mat M = E * r_c * E.transpose() - (Mat::Identity(n, n) - E * E.transpose());
    out.r_k = -rbar_k * M;

    const auto flow = min_energy_unit_flow(cg.net, cg.s, cg.t);
    const Vec fhat = flow.flow.coeffs.normalized();
    out.w0 = E * flow.flow.coeffs;
    out.c_w0 = householder_to(n, 0, E * fhat);

    const SpanProgram p = compose(cg, max_dim);
    out.r_k_direct = reflection_through(p.k_basis(), n);
    out.r_h_direct = reflection_through(p.hx_basis(x), n);
    return out;
}

/// max(|R^T R - I|, |R^2 - I|) in operator norm.
inline double reflection_defect(const Mat& R) {
    const Mat I = Mat::Identity(R.rows(), R.cols());
    return std::max(la::op_norm(R.transpose() * R - I), la::op_norm(R * R - I));
}

// =============================================================================
// Two-subspace instances and transducers
// =============================================================================

struct TwoSubspaceInstance {
    int dim = 0;
    std::function<Mat(const Input&)> h_a;  ///< basis of H_A(x)
    std::function<Mat(const Input&)> h_b;  ///< basis of H_B(x)
    std::function<Vec(const Input&)> psi0;

    static TwoSubspaceInstance from_span_program(const SpanProgram& p) {
        TwoSubspaceInstance t;
        t.dim = p.dim();
        t.h_a = [p](const Input& x) { return p.hx_basis(x); };
        const Mat K = p.k_basis();
        t.h_b = [K](const Input&) { return K; };
        const Vec w0 = p.w0();
        t.psi0 = [w0](const Input&) { return w0; };
        return t;
    }

    /// psi0(x) must be orthogonal to H_B(x).
    double orthogonality_residual(const Input& x) const {
        const Mat B = la::orth(h_b(x));
        const Vec v = psi0(x);
        return la::project(B, v).norm() / std::max(1.0, v.norm());
    }
};

inline Vec minus_state() {
    Vec v(2);
    v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    return v;
}

/// U = -(2 Pi_R - I)(I + R_B)(I + R_A) on C^2 (+) H, with R spanned by |-> (+) -psi0.
inline Mat to_transducer(const TwoSubspaceInstance& inst, const Input& x) {
    const int n = inst.dim;
    if (inst.orthogonality_residual(x) > 1e-8) throw InputError("psi0 is not orthogonal to H_B(x)");
    const int N = n + 2;
    Mat RA = Mat::Identity(N, N), RB = Mat::Identity(N, N);
    RA.bottomRightCorner(n, n) = reflection_through(la::orth(inst.h_a(x)), n);
    RB.bottomRightCorner(n, n) = reflection_through(la::orth(inst.h_b(x)), n);
    Vec psi(N);
    psi.head(2) = minus_state();
    psi.tail(n) = -inst.psi0(x);
    const Mat PR = psi * psi.transpose() / psi.squaredNorm();
    return -(2.0 * PR - Mat::Identity(N, N)) * RB * RA;
}

enum class WitnessSign { Positive, Negative };

/// Residual of U(|-> (+) w) = -+(|->) (+) w for a positive (sign -1) or negative (sign +1) witness.
inline double transduction_residual(const Mat& U, const Vec& w, WitnessSign sign) {
    Vec v(U.rows());
    v.head(2) = minus_state();
    v.tail(U.rows() - 2) = w;
    Vec expect = v;
    if (sign == WitnessSign::Positive) expect.head(2) *= -1.0;
    return (U * v - expect).norm();
}

inline bool verify_transduction(const Mat& U, const Vec& w, WitnessSign sign, double tol = 1e-9) {
    return transduction_residual(U, w, sign) <= tol;
}

// =============================================================================
// Algorithm 1
// =============================================================================

struct SimulationResult {
    Input input;
    long long iterations = 0;
    double p_one = 0.0;            ///< probability of outcome 1
    double success = 0.0;          ///< probability of the correct answer
    bool expected_positive = false;
    double norm_defect = 0.0;      ///< | |state| - 1 |
    double w_plus_bound = 0.0;
    double w_minus_bound = 0.0;
};

constexpr long long kDefaultMaxK = 4096;

inline long long algorithm1_iterations(double w_plus, double w_minus) {
    return static_cast<long long>(std::ceil(18.0 * std::sqrt(w_plus * w_minus) - 1e-9));
}

/// Exact state-vector run on C^K (x) C^2 (+) H; the measured projector is zero on the H summand.
inline SimulationResult run_algorithm1(const SpanProgram& p, double w_plus, double w_minus, const Input& x,
                                       long long max_K = kDefaultMaxK) {
    if (!(w_plus > 0.0) || !(w_minus > 0.0) || std::isinf(w_plus) || std::isinf(w_minus))
        throw InputError("bounds W+ and W- must be finite and positive");
    const long long K = algorithm1_iterations(w_plus, w_minus);
    if (K > max_K) throw InputError("K = " + std::to_string(K) + " exceeds the simulation cap");
    const int n = p.dim();
    const Index reg = 2 * K;
    CVec state = CVec::Zero(reg + n);
    for (long long j = 0; j < K; ++j) state(2 * j) = 1.0 / std::sqrt(static_cast<double>(K));

    const Mat QH = p.hx_basis(x);
    const Mat& QK = p.k_basis();
    const Vec w0s = -std::pow(w_minus / w_plus, 0.25) * p.w0();
    const double vnorm2 = 1.0 + w0s.squaredNorm();
    const double r = 1.0 / std::sqrt(2.0);

    auto reflect = [](CVec& h, const Mat& Q) {
        // h <- (2 Q Q^T - I) h
        if (Q.cols() == 0) {
            h = -h;
            return;
        }
        const Eigen::VectorXcd c = Q.transpose().cast<std::complex<double>>() * h;
        h = 2.0 * (Q.cast<std::complex<double>>() * c) - h;
    };

    for (long long j = 0; j < K; ++j) {
        CVec h = state.tail(n);
        reflect(h, QH);
        reflect(h, QK);
        state.tail(n) = h;
        // I - 2 |v><v| / |v|^2 with v = |j>|-> (+) w0s
        std::complex<double> ip = r * state(2 * j) - r * state(2 * j + 1);
        ip += (w0s.cast<std::complex<double>>().dot(state.tail(n)));
        const std::complex<double> c = 2.0 * ip / vnorm2;
        state(2 * j) -= c * r;
        state(2 * j + 1) += c * r;
        state.tail(n) -= c * w0s.cast<std::complex<double>>();
    }

    SimulationResult out;
    out.input = x;
    out.iterations = K;
    out.w_plus_bound = w_plus;
    out.w_minus_bound = w_minus;
    double p1 = 0.0;
    for (long long j = 0; j < K; ++j) p1 += std::norm(state(2 * j + 1));
    out.p_one = std::clamp(p1, 0.0, 1.0);
    out.expected_positive = classify(p, x);
    out.success = out.expected_positive ? out.p_one : 1.0 - out.p_one;
    out.norm_defect = std::abs(state.norm() - 1.0);
    return out;
}

inline SimulationResult run_algorithm1(const CompositionGraph& cg, double w_plus, double w_minus, const Input& x,
                                       long long max_K = kDefaultMaxK, int max_dim = kDefaultMaxDim) {
    return run_algorithm1(compose(cg, max_dim), w_plus, w_minus, x, max_K);
}

// =============================================================================
// Dual adversary feasibility
// =============================================================================

struct AdversaryReport {
    double max_residual = 0.0;
    double objective = 0.0;  ///< max |w_x|^2 over the scaled witnesses
    int pairs = 0;
    bool feasible(double tol = 1e-8) const { return max_residual <= tol; }
};

/// Witnesses w_x/sqrt 2 against oracles R_{H(x)}: <w_x|(I - O_x^T O_y)|w_y> = [f(x) != f(y)].
inline AdversaryReport adversary_feasibility(const SpanProgram& p, const std::vector<Input>& inputs,
                                             std::function<bool(const Input&)> f = {}) {
    const int n = p.dim();
    std::vector<Vec> w;
    std::vector<Mat> O;
    std::vector<bool> val;
    AdversaryReport rep;
    for (const auto& x : inputs) {
        const auto wr = witness(p, x);
        if (!wr.feasible) throw InputError("no witness for input '" + x + "'");
        w.push_back(wr.witness / std::sqrt(2.0));
        O.push_back(reflection_through(p.hx_basis(x), n));
        val.push_back(f ? f(x) : wr.positive);
        rep.objective = std::max(rep.objective, w.back().squaredNorm());
    }
    const Mat I = Mat::Identity(n, n);
    for (std::size_t a = 0; a < inputs.size(); ++a)
        for (std::size_t b = 0; b < inputs.size(); ++b) {
            const double lhs = w[a].dot((I - O[a].transpose() * O[b]) * w[b]);
            const double rhs = val[a] != val[b] ? 1.0 : 0.0;
            rep.max_residual = std::max(rep.max_residual, std::abs(lhs - rhs));
            ++rep.pairs;
        }
    return rep;
}

}  // namespace gcomp
