#include "greenkernel/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <utility>

#include "greenkernel/parallel.hpp"

namespace greenkernel {

namespace {

constexpr double kSobolevScaledAbove = 20.0;

double parity(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

// U(s) V(t) / sinh(σ) with U = sinh(σs) or cosh(σs) for even/odd ns and
// V = sinh(σ(1-t)) or cosh(σ(1-t)) for even/odd nt; requires s ≤ t.
// Large σ uses the form scaled by e^{-σ}, where every exponent is ≤ 0.
double sinh_ratio(double sigma, double s, int ns, double t, int nt) {
    if (sigma <= kSobolevScaledAbove) {
        const double u = ns % 2 == 0 ? std::sinh(sigma * s) : std::cosh(sigma * s);
        const double v = nt % 2 == 0 ? std::sinh(sigma * (1.0 - t)) : std::cosh(sigma * (1.0 - t));
        return u * v / std::sinh(sigma);
    }
    const double ps = parity(ns);
    const double pt = parity(nt);
    const double num = std::exp(sigma * (s - t)) - pt * std::exp(sigma * (s + t - 2.0)) -
                       ps * std::exp(-sigma * (s + t)) + ps * pt * std::exp(sigma * (t - s - 2.0));
    return num / (-2.0 * std::expm1(-2.0 * sigma));
}

void require_1d(const MultiIndex& alpha, const std::string& name) {
    if (alpha[1] != 0) {
        throw UnsupportedFunctionError("kernel " + name + " is one-dimensional");
    }
}

}  // namespace

std::string to_string(KernelRole role) {
    switch (role) {
        case KernelRole::green: return "G";
        case KernelRole::finite_rank: return "R";
        case KernelRole::composite: return "K";
        case KernelRole::fundamental: return "fundamental";
        case KernelRole::counterexample: return "counterexample";
    }
    return "unknown";
}

std::string to_string(PdVerdict verdict) {
    switch (verdict) {
        case PdVerdict::positive_definite: return "positive_definite";
        case PdVerdict::singular: return "singular";
        case PdVerdict::indefinite: return "indefinite";
    }
    return "unknown";
}

Kernel::Kernel(std::string name, Domain domain, KernelRole role, bool diagonal_kink, ValueFn value,
               DerivFn dx)
    : name_(std::move(name)),
      domain_(domain),
      role_(role),
      kink_(diagonal_kink),
      value_(std::move(value)),
      dx_(std::move(dx)) {}

double Kernel::operator()(const Point& x, const Point& y) const {
    if (!domain_.contains(x) || !domain_.contains(y)) {
        throw DomainError("kernel " + name_ + " evaluated outside " + domain_.to_string() + " at " +
                          x.to_string() + ", " + y.to_string());
    }
    return value_(x, y);
}

double Kernel::dx_unchecked(const MultiIndex& alpha, const Point& x, const Point& y) const {
    if (alpha.total() == 0) {
        return value_(x, y);
    }
    if (kink_ && x == y) {
        throw KinkError("derivative of kernel " + name_ + " requested on its diagonal at " +
                        x.to_string() + "; split the quadrature at y");
    }
    return dx_(alpha, x, y);
}

double Kernel::dx(const MultiIndex& alpha, const Point& x, const Point& y) const {
    if (!domain_.contains(x) || !domain_.contains(y)) {
        throw DomainError("kernel " + name_ + " derivative evaluated outside " + domain_.to_string());
    }
    return dx_unchecked(alpha, x, y);
}

Function Kernel::section(const Point& y) const {
    Kernel self = *this;
    return Function::from_oracle(
        domain_.dim(),
        [self, y](const MultiIndex& alpha, const Point& x) { return self.dx_unchecked(alpha, x, y); },
        name_ + "(., y)");
}

namespace catalog {

Kernel brownian_bridge() {
    return Kernel(
        "brownian_bridge", Domain::unit_interval(), KernelRole::green, true,
        [](const Point& x, const Point& y) { return std::min(x.x(), y.x()) - x.x() * y.x(); },
        [](const MultiIndex& alpha, const Point& x, const Point& y) {
            require_1d(alpha, "brownian_bridge");
            if (alpha[0] >= 2) return 0.0;
            return x.x() < y.x() ? 1.0 - y.x() : -y.x();
        });
}

Kernel brownian_motion() {
    return Kernel(
        "brownian_motion", Domain::unit_interval(), KernelRole::composite, true,
        [](const Point& x, const Point& y) { return std::min(x.x(), y.x()); },
        [](const MultiIndex& alpha, const Point& x, const Point& y) {
            require_1d(alpha, "brownian_motion");
            if (alpha[0] >= 2) return 0.0;
            return x.x() < y.x() ? 1.0 : 0.0;
        });
}

Kernel periodic_min() {
    return Kernel(
        "periodic_min", Domain::unit_interval(), KernelRole::composite, true,
        [](const Point& x, const Point& y) { return std::min(x.x(), y.x()) - x.x() * y.x() + 0.5; },
        [](const MultiIndex& alpha, const Point& x, const Point& y) {
            require_1d(alpha, "periodic_min");
            if (alpha[0] >= 2) return 0.0;
            return x.x() < y.x() ? 1.0 - y.x() : -y.x();
        });
}

Kernel sobolev_green(double sigma) {
    if (!(sigma > 0.0)) {
        throw InputError("sobolev kernels need sigma > 0");
    }
    auto eval = [sigma](int n, const Point& x, const Point& y) {
        const double xv = x.x();
        const double yv = y.x();
        if (xv <= yv) {
            return std::pow(sigma, n) * sinh_ratio(sigma, xv, n, yv, 0) / sigma;
        }
        return std::pow(-sigma, n) * sinh_ratio(sigma, yv, 0, xv, n) / sigma;
    };
    return Kernel(
        "sobolev_G", Domain::unit_interval(), KernelRole::green, true,
        [eval](const Point& x, const Point& y) { return eval(0, x, y); },
        [eval](const MultiIndex& alpha, const Point& x, const Point& y) {
            require_1d(alpha, "sobolev_G");
            return eval(alpha[0], x, y);
        });
}

Kernel sobolev_exponential(double sigma) {
    if (!(sigma > 0.0)) {
        throw InputError("sobolev kernels need sigma > 0");
    }
    return Kernel(
        "sobolev_K", Domain::unit_interval(), KernelRole::composite, true,
        [sigma](const Point& x, const Point& y) {
            return std::exp(-sigma * std::abs(x.x() - y.x())) / (2.0 * sigma);
        },
        [sigma](const MultiIndex& alpha, const Point& x, const Point& y) {
            require_1d(alpha, "sobolev_K");
            const int n = alpha[0];
            const double d = x.x() - y.x();
            const double rate = d > 0.0 ? -sigma : sigma;
            return std::pow(rate, n) * std::exp(-sigma * std::abs(d)) / (2.0 * sigma);
        });
}

Kernel abs_counterexample() {
    return Kernel(
        "abs_counterexample", Domain::unit_interval(), KernelRole::counterexample, true,
        [](const Point& x, const Point& y) { return -0.5 * std::abs(x.x() - y.x()); },
        [](const MultiIndex& alpha, const Point& x, const Point& y) {
            require_1d(alpha, "abs_counterexample");
            if (alpha[0] >= 2) return 0.0;
            return x.x() < y.x() ? 0.5 : -0.5;
        });
}

Kernel tps_fundamental() {
    constexpr double c = 1.0 / (8.0 * std::numbers::pi);
    return Kernel(
        "tps_fundamental", Domain::unit_square(), KernelRole::fundamental, true,
        [](const Point& x, const Point& y) {
            const double d0 = x[0] - y[0];
            const double d1 = x[1] - y[1];
            const double r2 = d0 * d0 + d1 * d1;
            if (r2 == 0.0) return 0.0;
            return c * r2 * 0.5 * std::log(r2);
        },
        [](const MultiIndex& alpha, const Point& x, const Point& y) {
            if (alpha.total() > 1) {
                throw UnsupportedFunctionError("tps_fundamental supports first derivatives only");
            }
            const int axis = alpha[0] == 1 ? 0 : 1;
            const double d0 = x[0] - y[0];
            const double d1 = x[1] - y[1];
            const double r2 = d0 * d0 + d1 * d1;
            return c * (std::log(r2) + 1.0) * (axis == 0 ? d0 : d1);
        });
}

std::vector<std::string> names() {
    return {"brownian_bridge", "brownian_motion", "periodic_min",       "sobolev_G",
            "sobolev_K",       "abs_counterexample", "tps_fundamental"};
}

Kernel by_name(const std::string& name, double sigma) {
    if (name == "brownian_bridge") return brownian_bridge();
    if (name == "brownian_motion") return brownian_motion();
    if (name == "periodic_min") return periodic_min();
    if (name == "sobolev_G") return sobolev_green(sigma);
    if (name == "sobolev_K") return sobolev_exponential(sigma);
    if (name == "abs_counterexample") return abs_counterexample();
    if (name == "tps_fundamental") return tps_fundamental();
    std::string valid;
    for (const auto& n : names()) {
        valid += (valid.empty() ? "" : ", ") + n;
    }
    throw InputError("unknown kernel '" + name + "'; valid kernels: " + valid);
}

}  // namespace catalog

Kernel make_R(const NullSpacePair& pair, const Domain& domain) {
    std::vector<NullSpaceEntry> entries = pair.entries();
    return Kernel(
        "R", domain, KernelRole::finite_rank, false,
        [entries](const Point& x, const Point& y) {
            double sum = 0.0;
            for (const NullSpaceEntry& e : entries) {
                sum += e.weight * e.psi(x) * e.psi(y);
            }
            return sum;
        },
        [entries](const MultiIndex& alpha, const Point& x, const Point& y) {
            double sum = 0.0;
            for (const NullSpaceEntry& e : entries) {
                sum += e.weight * e.psi.derivative(alpha, x) * e.psi(y);
            }
            return sum;
        });
}

Kernel compose_K(const Kernel& G, const Kernel& R) {
    if (!(G.domain() == R.domain())) {
        throw DomainError("cannot compose kernels on " + G.domain().to_string() + " and " +
                          R.domain().to_string());
    }
    return Kernel(
        G.name() + "+" + R.name(), G.domain(), KernelRole::composite,
        G.has_diagonal_kink() || R.has_diagonal_kink(),
        [G, R](const Point& x, const Point& y) {
            return G.value_unchecked(x, y) + R.value_unchecked(x, y);
        },
        [G, R](const MultiIndex& alpha, const Point& x, const Point& y) {
            return G.dx_unchecked(alpha, x, y) + R.dx_unchecked(alpha, x, y);
        });
}

double verify_reproducing(const Space& space, const Kernel& k, const Function& f, const Point& y) {
    if (!space.domain().is_interior(y)) {
        throw DomainError("reproducing property is checked at interior points, got " + y.to_string());
    }
    const double inner = hpb_inner(space, k.section(y), f, {y[0]});
    return std::abs(inner - f(y));
}

Eigen::MatrixXd gram(const Kernel& k, const std::vector<Point>& points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (points[i] == points[j]) {
                throw InputError("duplicate point " + points[i].to_string() + " at positions " +
                                 std::to_string(j) + " and " + std::to_string(i));
            }
        }
    }
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd g(n, n);
    parallel_for(points.size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = k(points[i], points[j]);
        }
    });
    return g;
}

PdCheck pd_check(const Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n) {
        throw InputError("pd_check needs a square matrix");
    }
    PdCheck out{PdVerdict::positive_definite, Eigen::MatrixXd::Zero(n, n),
                std::numeric_limits<double>::quiet_NaN()};
    if (n == 0) {
        return out;
    }
    const double max_diag = a.diagonal().maxCoeff();
    const double threshold = 1e-13 * std::max(max_diag, 0.0);
    Eigen::MatrixXd& l = out.factor;
    bool ok = max_diag > 0.0;
    for (Eigen::Index j = 0; ok && j < n; ++j) {
        double d = a(j, j);
        for (Eigen::Index k = 0; k < j; ++k) {
            d -= l(j, k) * l(j, k);
        }
        if (!(d > threshold)) {
            ok = false;
            break;
        }
        l(j, j) = std::sqrt(d);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (Eigen::Index k = 0; k < j; ++k) {
                s -= l(i, k) * l(j, k);
            }
            l(i, j) = s / l(j, j);
        }
    }
    if (ok) {
        return out;
    }
    out.factor.resize(0, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = es.eigenvalues();
    out.min_eigenvalue = ev.minCoeff();
    const double scale = std::max({ev.cwiseAbs().maxCoeff(), std::abs(max_diag),
                                   std::numeric_limits<double>::min()});
    out.verdict = out.min_eigenvalue < -1e-13 * scale ? PdVerdict::indefinite : PdVerdict::singular;
    return out;
}

NotPositiveDefiniteError::NotPositiveDefiniteError(PdVerdict verdict)
    : Error("Gram matrix is not positive definite: " + to_string(verdict)), verdict_(verdict) {}

}  // namespace greenkernel
