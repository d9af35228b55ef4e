#include "greenkernel/interp.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "greenkernel/parallel.hpp"

namespace greenkernel {

Interpolant::Interpolant(Kernel k, std::vector<Point> sites, Eigen::VectorXd values,
                         Eigen::MatrixXd gram, Eigen::MatrixXd factor, Eigen::VectorXd coeffs)
    : kernel_(std::move(k)),
      sites_(std::move(sites)),
      values_(std::move(values)),
      gram_(std::move(gram)),
      factor_(std::move(factor)),
      coeffs_(std::move(coeffs)) {}

Interpolant Interpolant::fit(const Kernel& k, std::vector<Point> sites, Eigen::VectorXd values) {
    if (static_cast<Eigen::Index>(sites.size()) != values.size()) {
        throw InputError("site count and value count differ");
    }
    if (sites.empty()) {
        throw InputError("interpolation needs at least one site");
    }
    Eigen::MatrixXd g = greenkernel::gram(k, sites);
    PdCheck check = pd_check(g);
    if (check.verdict != PdVerdict::positive_definite) {
        throw NotPositiveDefiniteError(check.verdict);
    }
    Eigen::VectorXd c = check.factor.triangularView<Eigen::Lower>().solve(values);
    c = check.factor.transpose().triangularView<Eigen::Upper>().solve(c);
    return Interpolant(k, std::move(sites), std::move(values), std::move(g), std::move(check.factor),
                       std::move(c));
}

double Interpolant::evaluate(const Point& x) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < sites_.size(); ++j) {
        sum += coeffs_(static_cast<Eigen::Index>(j)) * kernel_(x, sites_[j]);
    }
    return sum;
}

std::vector<double> Interpolant::evaluate(const std::vector<Point>& xs) const {
    std::vector<double> out(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) { out[i] = evaluate(xs[i]); });
    return out;
}

double Interpolant::native_norm() const {
    return std::sqrt(std::max(0.0, coeffs_.dot(gram_ * coeffs_)));
}

Function Interpolant::as_function() const {
    Function s(kernel_.domain().dim());
    for (std::size_t j = 0; j < sites_.size(); ++j) {
        s = s + coeffs_(static_cast<Eigen::Index>(j)) * kernel_.section(sites_[j]);
    }
    return s.renamed("s");
}

std::vector<Point> equispaced_interior_sites(const Domain& domain, int n) {
    const Interval iv = domain.axis(0);
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        out.emplace_back(iv.lo + iv.length() * i / (n + 1));
    }
    return out;
}

std::vector<Point> evaluation_grid(const Domain& domain, int n) {
    const Interval iv = domain.axis(0);
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.emplace_back(iv.lo + iv.length() * i / (n - 1));
    }
    return out;
}

std::vector<ConvergenceRow> convergence_study(const Kernel& k, const Function& f,
                                              const std::vector<int>& site_counts) {
    if (k.domain().dim() != 1) {
        throw InputError("convergence study is defined for 1D kernels");
    }
    const std::vector<Point> grid = evaluation_grid(k.domain());
    std::vector<ConvergenceRow> rows;
    for (int n : site_counts) {
        if (n < 1) {
            throw InputError("site counts must be positive");
        }
        std::vector<Point> sites = equispaced_interior_sites(k.domain(), n);
        Eigen::VectorXd values(n);
        for (int i = 0; i < n; ++i) {
            values(i) = f(sites[static_cast<std::size_t>(i)]);
        }
        const Interpolant s = Interpolant::fit(k, std::move(sites), std::move(values));
        const std::vector<double> sv = s.evaluate(grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            worst = std::max(worst, std::abs(sv[i] - f(grid[i])));
        }
        rows.push_back({n, worst});
    }
    return rows;
}

namespace {

double parse_number(const std::string& field, int row) {
    std::size_t b = field.find_first_not_of(" \t\r");
    std::size_t e = field.find_last_not_of(" \t\r");
    if (b == std::string::npos) {
        throw InputError("row " + std::to_string(row) + ": empty field");
    }
    const char* first = field.data() + b;
    const char* last = field.data() + e + 1;
    if (*first == '+') {
        ++first;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw InputError("row " + std::to_string(row) + ": cannot parse '" + field + "' as a number");
    }
    return v;
}

}  // namespace

SiteData read_sites_csv(std::istream& in, int dim) {
    std::string line;
    if (!std::getline(in, line)) {
        throw InputError("CSV is empty; a header row is required");
    }
    SiteData data;
    std::vector<double> values;
    std::map<std::pair<double, double>, int> seen;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        if (static_cast<int>(fields.size()) != dim + 1) {
            throw InputError("row " + std::to_string(row) + ": expected " + std::to_string(dim + 1) +
                             " fields, found " + std::to_string(fields.size()));
        }
        const double x1 = parse_number(fields[0], row);
        const double x2 = dim == 2 ? parse_number(fields[1], row) : 0.0;
        const double v = parse_number(fields[static_cast<std::size_t>(dim)], row);
        auto [it, inserted] = seen.emplace(std::make_pair(x1, x2), row);
        if (!inserted) {
            throw InputError("row " + std::to_string(row) + ": duplicate site (first seen at row " +
                             std::to_string(it->second) + ")");
        }
        data.sites.push_back(dim == 2 ? Point(x1, x2) : Point(x1));
        values.push_back(v);
    }
    data.values = Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    return data;
}

}  // namespace greenkernel
