#pragma once

#include "gcomp/linalg.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace gcomp {

/// Inputs are string labels; bit strings, bracket strings and symbol strings all fit.
using Input = std::string;

// =============================================================================
// Span program
// =============================================================================

/// Span program (H, x -> H(x), K, w0). H(x) is produced on demand from a label.
class SpanProgram {
public:
    using HxFn = std::function<Mat(const Input&)>;

    SpanProgram() = default;

    SpanProgram(int dim, Vec w0, Mat kgen, HxFn hx, std::optional<std::vector<Input>> domain = {})
        : dim_(dim), w0_(std::move(w0)), hx_(std::move(hx)), domain_(std::move(domain)) {
        if (dim_ <= 0) throw InputError("span program dimension must be positive");
        if (w0_.size() != dim_) throw InputError("w0 has wrong length");
        if (kgen.rows() != dim_ && kgen.cols() > 0) throw InputError("K generator has wrong row count");
        if (kgen.cols() == 0) kgen = Mat(dim_, 0);
        if (w0_.norm() == 0.0) throw InputError("w0 must be nonzero");
        kbasis_ = std::make_shared<const Mat>(la::orth(kgen));
        const double leak = la::project(*kbasis_, w0_).norm();
        if (leak > 1e-8 * w0_.norm()) throw InputError("w0 is not orthogonal to K");
    }

    /// Explicit table form: one generator matrix per input label.
    static SpanProgram from_table(int dim, Vec w0, Mat kgen, std::unordered_map<Input, Mat> table) {
        std::vector<Input> labels;
        for (const auto& [k, v] : table) {
            if (v.rows() != dim && v.cols() > 0) throw InputError("H(x) generator has wrong row count");
            labels.push_back(k);
        }
        std::sort(labels.begin(), labels.end());
        auto shared = std::make_shared<const std::unordered_map<Input, Mat>>(std::move(table));
        HxFn fn = [shared, dim](const Input& x) -> Mat {
            auto it = shared->find(x);
            if (it == shared->end()) throw InputError("unknown input label '" + x + "'");
            if (it->second.cols() == 0) return Mat(dim, 0);
            return it->second;
        };
        return SpanProgram(dim, std::move(w0), std::move(kgen), std::move(fn), std::move(labels));
    }

    int dim() const { return dim_; }
    const Vec& w0() const { return w0_; }
    const Mat& k_basis() const { return *kbasis_; }
    Mat hx(const Input& x) const {
        Mat H = hx_(x);
        if (H.cols() == 0) return Mat(dim_, 0);
        if (H.rows() != dim_) throw InputError("H(x) generator has wrong row count");
        return H;
    }
    Mat hx_basis(const Input& x) const { return la::orth(hx(x)); }
    const HxFn& hx_fn() const { return hx_; }
    const std::optional<std::vector<Input>>& domain() const { return domain_; }

private:
    int dim_ = 0;
    Vec w0_;
    HxFn hx_;
    std::optional<std::vector<Input>> domain_;
    std::shared_ptr<const Mat> kbasis_;
};

struct WitnessReport {
    Input input;
    bool positive = false;
    Vec witness;
    double size = kInf;
    bool feasible = false;
};

// =============================================================================
// Classification and witnesses
// =============================================================================

namespace detail {
/// Component of w0 orthogonal to K + H(x).
inline Vec residual_outside(const SpanProgram& p, const Input& x) {
    const Mat Q = la::orth(la::hcat(p.k_basis(), p.hx(x)));
    return p.w0() - la::project(Q, p.w0());
}
}  // namespace detail

inline bool classify(const SpanProgram& p, const Input& x, double tol = kTol) {
    return detail::residual_outside(p, x).norm() <= tol * p.w0().norm();
}

/// argmin ||w||^2 over w in H(x) with w - w0 in K.
inline WitnessReport positive_witness(const SpanProgram& p, const Input& x, double tol = kTol) {
    WitnessReport rep;
    rep.input = x;
    rep.positive = true;
    const Mat QH = p.hx_basis(x);
    const Mat& QK = p.k_basis();
    Mat M = QH;
    if (QK.cols() && QH.cols()) M -= QK * (QK.transpose() * QH);
    double res = 0.0;
    const Vec a = la::min_norm_solve(M, p.w0(), res);
    if (res > std::max(tol, 1e-8) * p.w0().norm()) {
        rep.witness = Vec::Zero(p.dim());
        return rep;
    }
    rep.witness = QH.cols() ? Vec(QH * a) : Vec(Vec::Zero(p.dim()));
    rep.size = rep.witness.squaredNorm();
    rep.feasible = true;
    return rep;
}

/// Closed form: with q the projection of w0 onto (K + H(x))^perp, witness q/||q||^2.
inline WitnessReport negative_witness(const SpanProgram& p, const Input& x, double tol = kTol) {
    WitnessReport rep;
    rep.input = x;
    rep.positive = false;
    const Vec q = detail::residual_outside(p, x);
    const double qn2 = q.squaredNorm();
    if (std::sqrt(qn2) <= tol * p.w0().norm()) {
        rep.witness = Vec::Zero(p.dim());
        return rep;
    }
    rep.witness = q / qn2;
    rep.size = 1.0 / qn2;
    rep.feasible = true;
    return rep;
}

inline WitnessReport witness(const SpanProgram& p, const Input& x, double tol = kTol) {
    return classify(p, x, tol) ? positive_witness(p, x, tol) : negative_witness(p, x, tol);
}

// =============================================================================
// Program transformations
// =============================================================================

inline SpanProgram scalar_multiply(const SpanProgram& p, double alpha) {
    if (!(alpha > 0.0) || std::isinf(alpha)) throw InputError("scalar multiple must be a positive real");
    return SpanProgram(p.dim(), p.w0() * std::sqrt(alpha), p.k_basis(), p.hx_fn(), p.domain());
}

/// H'(x) = H(x)^perp, K' = (K + span w0)^perp, w0' = w0/||w0||^2.
inline SpanProgram negate(const SpanProgram& p) {
    const int n = p.dim();
    const Mat Kp = la::complement(la::hcat(p.k_basis(), p.w0()), n);
    auto fn = p.hx_fn();
    SpanProgram::HxFn hx = [fn, n](const Input& x) -> Mat {
        Mat H = fn(x);
        if (H.cols() == 0) return Mat::Identity(n, n);
        return la::complement(H, n);
    };
    return SpanProgram(n, p.w0() / p.w0().squaredNorm(), Kp, hx, p.domain());
}

/// One-dimensional program with K = {0}, w0 = e1 and H(x) full exactly when pred(x).
inline SpanProgram trivial(std::function<bool(const Input&)> pred, std::optional<std::vector<Input>> domain = {}) {
    SpanProgram::HxFn hx = [pred](const Input& x) -> Mat {
        return pred(x) ? Mat(Mat::Identity(1, 1)) : Mat(1, 0);
    };
    return SpanProgram(1, Vec::Ones(1), Mat(1, 0), hx, std::move(domain));
}

struct ComplexityReport {
    double w_plus = 0.0;   ///< max positive witness size (0 if no positive input)
    double w_minus = 0.0;  ///< max negative witness size (0 if no negative input)
    double c = 0.0;
    bool has_positive = false;
    bool has_negative = false;
};

inline ComplexityReport complexity_from_sizes(const std::vector<std::pair<bool, double>>& sizes) {
    ComplexityReport r;
    for (auto [pos, size] : sizes) {
        if (pos) {
            r.has_positive = true;
            r.w_plus = std::max(r.w_plus, size);
        } else {
            r.has_negative = true;
            r.w_minus = std::max(r.w_minus, size);
        }
    }
    r.c = std::sqrt(r.w_plus * r.w_minus);
    return r;
}

inline ComplexityReport complexity(const SpanProgram& p, const std::vector<Input>& inputs, double tol = kTol) {
    if (inputs.empty()) throw InputError("complexity needs at least one input");
    std::vector<std::pair<bool, double>> sizes;
    for (const auto& x : inputs) {
        const auto w = witness(p, x, tol);
        sizes.push_back({w.positive, w.size});
    }
    return complexity_from_sizes(sizes);
}

}  // namespace gcomp
