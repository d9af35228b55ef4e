#include "greenkernel/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "greenkernel/errors.hpp"

namespace greenkernel {

namespace {

// Gauss-Legendre nodes/weights on (-1,1) by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(static_cast<std::size_t>(n), 0.0);
    w.assign(static_cast<std::size_t>(n), 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p0 = 1.0;
                p1 = z;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                break;
            }
        }
        // Recompute derivative at the converged node for the weight.
        double p0 = 1.0;
        double p1 = z;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[static_cast<std::size_t>(i)] = -z;
        x[static_cast<std::size_t>(n - 1 - i)] = z;
        w[static_cast<std::size_t>(i)] = wi;
        w[static_cast<std::size_t>(n - 1 - i)] = wi;
    }
    if (n % 2 == 1) {
        x[static_cast<std::size_t>(n / 2)] = 0.0;
    }
}

double checked(const Integrand& f, const Point& p) {
    const double v = f(p);
    if (!std::isfinite(v)) {
        throw IntegrandError(p, v);
    }
    return v;
}

}  // namespace

QuadratureRule::QuadratureRule(int nodes, int panels) : panels_(panels) {
    if (nodes < 1 || panels < 1) {
        throw DomainError("quadrature rule needs at least one node and one panel");
    }
    std::vector<double> t;
    std::vector<double> w;
    gauss_legendre(nodes, t, w);
    nodes_.resize(t.size());
    weights_.resize(w.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        nodes_[i] = 0.5 * (t[i] + 1.0);
        weights_[i] = 0.5 * w[i];
    }
}

QuadratureRule QuadratureRule::with_split(double s, int axis) const {
    return with_splits({s}, axis);
}

QuadratureRule QuadratureRule::with_splits(const std::vector<double>& s, int axis) const {
    QuadratureRule r = *this;
    auto& dst = r.splits_.at(static_cast<std::size_t>(axis));
    dst.insert(dst.end(), s.begin(), s.end());
    std::sort(dst.begin(), dst.end());
    dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
    return r;
}

QuadratureRule QuadratureRule::with_panels(int panels) const {
    if (panels < 1) {
        throw DomainError("panels must be positive");
    }
    QuadratureRule r = *this;
    r.panels_ = panels;
    return r;
}

void QuadratureRule::nodes_on(const Interval& iv, int axis, std::vector<double>& x,
                              std::vector<double>& w) const {
    std::vector<double> cuts{iv.lo};
    for (double s : splits(axis)) {
        if (s < iv.lo || s > iv.hi) {
            throw DomainError("split point " + std::to_string(s) + " lies outside the domain");
        }
        if (s > iv.lo && s < iv.hi) {
            cuts.push_back(s);
        }
    }
    cuts.push_back(iv.hi);

    x.clear();
    w.clear();
    x.reserve((cuts.size() - 1) * static_cast<std::size_t>(panels_) * nodes_.size());
    w.reserve(x.capacity());
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double h = (cuts[c + 1] - cuts[c]) / panels_;
        for (int p = 0; p < panels_; ++p) {
            const double left = cuts[c] + p * h;
            for (std::size_t i = 0; i < nodes_.size(); ++i) {
                x.push_back(left + h * nodes_[i]);
                w.push_back(h * weights_[i]);
            }
        }
    }
}

double integrate_interior(const Integrand& f, const Domain& domain, const QuadratureRule& rule) {
    std::vector<double> x0;
    std::vector<double> w0;
    rule.nodes_on(domain.axis(0), 0, x0, w0);
    if (domain.dim() == 1) {
        double sum = 0.0;
        for (std::size_t i = 0; i < x0.size(); ++i) {
            sum += w0[i] * checked(f, Point(x0[i]));
        }
        return sum;
    }
    std::vector<double> x1;
    std::vector<double> w1;
    rule.nodes_on(domain.axis(1), 1, x1, w1);
    double sum = 0.0;
    for (std::size_t i = 0; i < x0.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < x1.size(); ++j) {
            row += w1[j] * checked(f, Point(x0[i], x1[j]));
        }
        sum += w0[i] * row;
    }
    return sum;
}

double integrate_boundary(const Integrand& f, const Domain& domain, const QuadratureRule& rule) {
    if (domain.dim() == 1) {
        return checked(f, Point(domain.axis(0).lo)) + checked(f, Point(domain.axis(0).hi));
    }
    double sum = 0.0;
    std::vector<double> t;
    std::vector<double> w;
    for (const Edge& e : domain.edges()) {
        rule.nodes_on(domain.axis(e.axis), e.axis, t, w);
        // Gauss nodes never touch the corners, so each corner counts for no edge
        // and the half-open convention is automatic.
        double edge_sum = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            edge_sum += w[i] * checked(f, e.start.with(e.axis, t[i]));
        }
        sum += edge_sum;
    }
    return sum;
}

}  // namespace greenkernel
