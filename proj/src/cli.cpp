#include "greenkernel/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "greenkernel/errors.hpp"
#include "greenkernel/hilbert.hpp"
#include "greenkernel/interp.hpp"
#include "greenkernel/kernels.hpp"
#include "greenkernel/spectral.hpp"
#include "greenkernel/tps2d.hpp"

namespace greenkernel::cli {

namespace {

using json = nlohmann::json;

constexpr double kPi = std::numbers::pi;
constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& text, const std::string& what) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    while (first < last && (*first == ' ' || *first == '+')) {
        ++first;
    }
    while (last > first && last[-1] == ' ') {
        --last;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last || !std::isfinite(v)) {
        throw InputError("cannot parse '" + text + "' as a number for " + what);
    }
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        out.push_back(item);
    }
    return out;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    for (const std::string& s : split(text, ',')) {
        out.push_back(parse_double(s, what));
    }
    if (out.empty()) {
        throw InputError(what + " is empty");
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<int> out;
    for (double v : parse_list(text, what)) {
        if (v != std::floor(v) || v < 1 || v > 1e8) {
            throw InputError(what + " must list positive integers");
        }
        out.push_back(static_cast<int>(v));
    }
    return out;
}

Point parse_point(const std::string& text, const std::string& what) {
    const std::vector<double> v = parse_list(text, what);
    if (v.size() == 1) {
        return {v[0]};
    }
    if (v.size() == 2) {
        return {v[0], v[1]};
    }
    throw InputError(what + " must have one or two coordinates");
}

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (const std::string& n : names) {
        out += (out.empty() ? "" : ", ") + n;
    }
    return out;
}

// Test functions on (0,1) selectable by name.
const std::map<std::string, Function>& function_catalog() {
    static const std::map<std::string, Function> table = {
        {"sin_pi", fn::sine(kPi)},
        {"sin_half_pi", fn::sine(kPi / 2)},
        {"cos_2pi", fn::cosine(2 * kPi)},
        {"x", fn::coordinate()},
        {"one", fn::constant(1.0)},
        {"zero", fn::zero()},
        {"exp", fn::exponential(1.0)},
        {"x_one_minus_x", fn::polynomial({0, 1, -1})},
        {"x2_one_minus_x", fn::polynomial({0, 0, 1, -1})},
    };
    return table;
}

Function function_by_name(const std::string& name) {
    const auto& table = function_catalog();
    auto it = table.find(name);
    if (it == table.end()) {
        std::vector<std::string> names;
        for (const auto& [k, v] : table) {
            names.push_back(k);
        }
        throw InputError("unknown function '" + name + "'; valid names: " + join(names));
    }
    return it->second;
}

struct SpaceChoice {
    Space space;
    Kernel kernel;
    std::vector<Function> null_basis;  // spans Null(L)
};

SpaceChoice space_by_name(const std::string& name, double sigma) {
    const std::vector<Function> linear{fn::constant(1.0), fn::coordinate()};
    if (name == "brownian_bridge") {
        return {Space::brownian_bridge(), catalog::brownian_bridge(), linear};
    }
    if (name == "brownian_motion") {
        return {Space::brownian_motion(), catalog::brownian_motion(), linear};
    }
    if (name == "periodic") {
        return {Space::periodic(), catalog::periodic_min(), linear};
    }
    const std::vector<Function> expo{fn::shifted_exponential(-sigma, 0.0), fn::shifted_exponential(sigma, 1.0)};
    if (name == "sobolev") {
        return {Space::sobolev(sigma), catalog::sobolev_exponential(sigma), expo};
    }
    if (name == "sobolev_homogeneous") {
        return {Space::sobolev_homogeneous(sigma), catalog::sobolev_green(sigma), expo};
    }
    throw InputError("unknown space '" + name +
                     "'; valid names: brownian_bridge, brownian_motion, periodic, sobolev, sobolev_homogeneous");
}

struct Options {
    std::string config;
    std::string output;
    std::string diagnostics;
    double tolerance = kUnset;

    std::string kernel;
    std::string space = "brownian_bridge";
    std::string function;
    std::string family = "bridge";
    std::string which = "all";
    std::string x;
    std::string y;
    std::string points;
    std::string counts;
    std::string input;
    double sigma = 1.0;
    double onb_tolerance = 1e-8;
    int grid = 0;
    int N = 10000;
    int count = 10;
    int onb = 5;
    int n = 64;
};

struct Result {
    json params = json::object();
    double max_residual = 0.0;
    bool pass = true;
    json extra = json::object();
    std::string csv;
};

double tol_or(const Options& o, double fallback) {
    return std::isnan(o.tolerance) ? fallback : o.tolerance;
}

std::vector<Point> unit_grid(int n) {
    if (n < 2) {
        throw InputError("grid needs at least 2 points");
    }
    std::vector<Point> out;
    for (int i = 0; i < n; ++i) {
        out.emplace_back(static_cast<double>(i) / (n - 1));
    }
    return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------

Result kernel_eval(const Options& o) {
    const std::string name = o.kernel.empty() ? "brownian_bridge" : o.kernel;
    const Kernel k = catalog::by_name(name, o.sigma);
    Result r;
    r.params = {{"kernel", name}, {"sigma", o.sigma}};
    const double tol = tol_or(o, 0.0);
    std::ostringstream csv;
    auto row = [&](const Point& x, const Point& y) {
        const double v = k(x, y);
        r.max_residual = std::max(r.max_residual, std::abs(v - k(y, x)));
        if (x.dim() == 1) {
            csv << num(x[0]) << ',' << num(y[0]) << ',' << num(v) << '\n';
        } else {
            csv << num(x[0]) << ',' << num(x[1]) << ',' << num(y[0]) << ',' << num(y[1]) << ',' << num(v) << '\n';
        }
    };
    const int dim = k.domain().dim();
    csv << (dim == 1 ? "x,y,value\n" : "x1,x2,y1,y2,value\n");
    if (!o.x.empty() || !o.y.empty()) {
        if (o.x.empty() || o.y.empty()) {
            throw InputError("kernel-eval needs both --x and --y");
        }
        const Point x = parse_point(o.x, "--x");
        const Point y = parse_point(o.y, "--y");
        if (x.dim() != dim || y.dim() != dim) {
            throw InputError("points must have " + std::to_string(dim) + " coordinate(s) for " + name);
        }
        row(x, y);
        r.params["x"] = o.x;
        r.params["y"] = o.y;
    } else {
        if (dim != 1) {
            throw InputError(name + " is two-dimensional; pass --x and --y");
        }
        const int g = o.grid > 0 ? o.grid : 11;
        for (const Point& x : unit_grid(g)) {
            for (const Point& y : unit_grid(g)) {
                row(x, y);
            }
        }
        r.params["grid"] = g;
    }
    r.params["tolerance"] = tol;
    r.extra["check"] = "symmetry";
    r.pass = r.max_residual <= tol;
    r.csv = csv.str();
    return r;
}

Result compose_check(const Options& o) {
    const std::string name = o.kernel.empty() ? "sobolev" : o.kernel;
    const Domain d = Domain::unit_interval();
    Kernel composed = catalog::brownian_bridge();
    Kernel reference = catalog::brownian_bridge();
    std::string identity;
    if (name == "sobolev" || name == "sobolev_K") {
        const Space s = Space::sobolev(o.sigma);
        composed = compose_K(catalog::sobolev_green(o.sigma), make_R(s.pair(), d));
        reference = catalog::sobolev_exponential(o.sigma);
        identity = "G_sigma + R = exp(-sigma|x-y|)/(2 sigma)";
    } else if (name == "brownian_motion") {
        composed = compose_K(catalog::brownian_bridge(), make_R(Space::brownian_motion().pair(), d));
        reference = catalog::brownian_motion();
        identity = "min{x,y} - xy + xy = min{x,y}";
    } else if (name == "periodic" || name == "periodic_min") {
        composed = compose_K(catalog::brownian_bridge(), make_R(Space::periodic().pair(), d));
        reference = catalog::periodic_min();
        identity = "min{x,y} - xy + 1/2 = periodic_min";
    } else {
        throw InputError("unknown compose-check kernel '" + name + "'; valid names: sobolev, brownian_motion, periodic");
    }
    const int g = o.grid > 0 ? o.grid : 101;
    Result r;
    const double tol = tol_or(o, 1e-12);
    r.params = {{"kernel", name}, {"sigma", o.sigma}, {"grid", g}, {"tolerance", tol}};
    for (const Point& x : unit_grid(g)) {
        for (const Point& y : unit_grid(g)) {
            r.max_residual = std::max(r.max_residual, std::abs(composed(x, y) - reference(x, y)));
        }
    }
    r.extra["identity"] = identity;
    r.pass = r.max_residual <= tol;
    return r;
}

Result verify_reproducing_cmd(const Options& o) {
    const SpaceChoice c = space_by_name(o.space, o.sigma);
    const std::string fname = o.function.empty() ? "sin_pi" : o.function;
    const Function f = function_by_name(fname);
    const std::vector<double> ys =
        o.points.empty() ? std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}
                         : parse_list(o.points, "--points");
    Result r;
    const double tol = tol_or(o, 1e-9);
    r.params = {{"space", o.space}, {"sigma", o.sigma}, {"function", fname}, {"points", ys}, {"tolerance", tol}};
    std::ostringstream csv;
    csv << "y,residual\n";
    for (double y : ys) {
        const double res = verify_reproducing(c.space, c.kernel, f, y);
        r.max_residual = std::max(r.max_residual, res);
        csv << num(y) << ',' << num(res) << '\n';
    }
    r.extra["kernel"] = c.kernel.name();
    r.pass = r.max_residual <= tol;
    r.csv = csv.str();
    return r;
}

// Coefficients of an affine function in {1, x} or {1, x1, x2}.
std::vector<double> affine_coefficients(const Function& f) {
    if (f.dim() == 1) {
        const double c0 = f(0.0);
        return {c0, f(1.0) - c0};
    }
    const double c0 = f(Point(0.0, 0.0));
    return {c0, f(Point(1.0, 0.0)) - c0, f(Point(0.0, 1.0)) - c0};
}

double sup_up_to_sign(const Function& a, const Function& b, const Domain& d) {
    double plus = 0.0;
    double minus = 0.0;
    for (const Point& x : d.boundary_samples()) {
        plus = std::max(plus, std::abs(a(x) - b(x)));
        minus = std::max(minus, std::abs(a(x) + b(x)));
    }
    for (const Point& x : d.interior_samples()) {
        plus = std::max(plus, std::abs(a(x) - b(x)));
        minus = std::max(minus, std::abs(a(x) + b(x)));
    }
    return std::min(plus, minus);
}

Result orthonormalize_cmd(const Options& o) {
    struct Case {
        std::string name;
        OperatorSystem sys;
        std::vector<Function> basis;
        std::vector<Function> expected;  // empty: report only
        bool affine;
    };
    const double r2 = std::sqrt(2.0);
    const OperatorSystem mk = OperatorSystem::min_kernel();
    const OperatorSystem tp = OperatorSystem::thin_plate();
    const Function one2 = fn::constant(1.0, 2);
    std::vector<Case> cases;
    auto want = [&](const std::string& n) { return o.which == "all" || o.which == n; };
    if (want("one_x")) {
        cases.push_back({"one_x", mk, {fn::constant(1.0), fn::coordinate()},
                         {fn::constant(r2 / 2), fn::polynomial({-r2 / 2, r2})}, true});
    }
    if (want("x_one_minus_x")) {
        const std::vector<Function> b{fn::coordinate(), fn::polynomial({1, -1})};
        cases.push_back({"x_one_minus_x", mk, b, b, true});
    }
    if (want("sobolev")) {
        const Space s = Space::sobolev(o.sigma);
        const std::vector<Function> b{s.pair()[0].psi, s.pair()[1].psi};
        cases.push_back({"sobolev", s.system(), b, b, false});
    }
    if (want("thin_plate")) {
        cases.push_back({"thin_plate", tp, {one2, fn::coordinate(0, 2) - 2.0 * one2, fn::coordinate(1, 2) - 2.0 * one2},
                         {}, true});
    }
    if (cases.empty()) {
        throw InputError("unknown orthonormalize case '" + o.which +
                         "'; valid names: all, one_x, x_one_minus_x, sobolev, thin_plate");
    }
    Result r;
    const double tol = tol_or(o, 1e-12);
    r.params = {{"case", o.which}, {"sigma", o.sigma}, {"tolerance", tol}};
    std::ostringstream csv;
    csv << "case,matrix,i,j,value\n";
    auto emit = [&](const std::string& name, const std::string& label, const Eigen::MatrixXd& m) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                csv << name << ',' << label << ',' << i + 1 << ',' << j + 1 << ',' << num(m(i, j)) << '\n';
            }
        }
    };
    json report = json::object();
    for (const Case& c : cases) {
        const Eigen::MatrixXd in = b_gram(c.basis, c.sys.B, c.sys.domain);
        const std::vector<Function> q = orthonormalize(c.basis, c.sys.B, c.sys.domain);
        const Eigen::MatrixXd outg = b_gram(q, c.sys.B, c.sys.domain);
        const auto k = outg.rows();
        double dev = (outg - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
        double mismatch = 0.0;
        for (std::size_t i = 0; i < c.expected.size(); ++i) {
            mismatch = std::max(mismatch, sup_up_to_sign(q[i], c.expected[i], c.sys.domain));
        }
        r.max_residual = std::max({r.max_residual, dev, mismatch});
        emit(c.name, "input_gram", in);
        emit(c.name, "output_gram", outg);
        json entry = {{"input_gram", matrix_json(in)}, {"output_gram", matrix_json(outg)},
                      {"output_gram_deviation", dev}};
        if (!c.expected.empty()) {
            entry["reference_mismatch_up_to_sign"] = mismatch;
        }
        if (c.affine) {
            json coeffs = json::array();
            for (const Function& f : q) {
                coeffs.push_back(affine_coefficients(f));
            }
            entry["coefficients"] = coeffs;
        }
        if (c.name == "thin_plate") {
            const double s = std::sqrt(3.0 / 29.0);
            const std::vector<Function> quoted{0.5 * one2, s * (fn::coordinate(0, 2) - 2.0 * one2),
                                               s * (fn::coordinate(1, 2) - 2.0 * one2)};
            const Eigen::MatrixXd qg = b_gram(quoted, c.sys.B, c.sys.domain);
            emit(c.name, "quoted_basis_gram", qg);
            entry["quoted_basis_gram"] = matrix_json(qg);
            entry["note"] = "report only: the quoted basis is not B-orthonormal under the full boundary product";
        }
        report[c.name] = entry;
    }
    r.extra["cases"] = report;
    r.pass = r.max_residual <= tol;
    r.csv = csv.str();
    return r;
}

struct Family {
    Space space;
    Kernel kernel;
    std::vector<EigenPair> pairs;
};

Family family_by_name(const std::string& name, double sigma, int count) {
    if (name == "bridge") {
        return {Space::brownian_bridge(), catalog::brownian_bridge(), dirichlet_eigenpairs(0.0, count)};
    }
    if (name == "sobolev") {
        return {Space::sobolev_homogeneous(sigma), catalog::sobolev_green(sigma), dirichlet_eigenpairs(sigma, count)};
    }
    if (name == "brownian_motion") {
        return {Space::brownian_motion(), catalog::brownian_motion(), mixed_eigenpairs_brownian(count)};
    }
    throw InputError("unknown family '" + name + "'; valid names: bridge, sobolev, brownian_motion");
}

Result mercer_compare(const Options& o) {
    if (o.N < 1) {
        throw InputError("--N must be at least 1");
    }
    std::vector<int> counts;
    if (o.counts.empty()) {
        for (int c = 1; c < o.N; c *= 10) {
            counts.push_back(c);
        }
        counts.push_back(o.N);
    } else {
        counts = parse_int_list(o.counts, "--counts");
    }
    const int top = *std::max_element(counts.begin(), counts.end());
    const Family f = family_by_name(o.family, o.sigma, top);
    const int g = o.grid > 0 ? o.grid : 51;
    Result r;
    const double tol = tol_or(o, 1e-4);
    r.params = {{"family", o.family}, {"sigma", o.sigma}, {"N", o.N}, {"counts", counts}, {"grid", g}, {"tolerance", tol}};
    std::ostringstream csv;
    csv << "N,sup_error\n";
    double last = 0.0;
    for (int c : counts) {
        last = mercer_sup_error(f.pairs, c, f.kernel, g);
        csv << c << ',' << num(last) << '\n';
    }
    r.max_residual = last;
    r.pass = last <= tol;
    r.csv = csv.str();
    return r;
}

Result eig_check(const Options& o) {
    const Family f = family_by_name(o.family, o.sigma, std::max(o.count, o.onb));
    Result r;
    const double tol = tol_or(o, 1e-6);
    r.params = {{"family", o.family}, {"sigma", o.sigma}, {"count", o.count}, {"onb", o.onb},
                {"tolerance", tol}, {"onb_tolerance", o.onb_tolerance}};
    std::ostringstream csv;
    csv << "p,operator_eigenvalue,kernel_side,operator_side,boundary\n";
    for (int p = 0; p < o.count; ++p) {
        const EigenPair& e = f.pairs[static_cast<std::size_t>(p)];
        const TransferResiduals t = transfer_residuals(f.space, f.kernel, e);
        r.max_residual = std::max({r.max_residual, t.kernel_side, t.operator_side, t.boundary});
        csv << e.index << ',' << num(e.operator_eigenvalue) << ',' << num(t.kernel_side) << ','
            << num(t.operator_side) << ',' << num(t.boundary) << '\n';
    }
    const double onb = o.onb > 0 ? onb_check(f.space, f.pairs, o.onb) : 0.0;
    r.extra["onb_deviation"] = onb;
    r.pass = r.max_residual <= tol && onb <= o.onb_tolerance;
    r.csv = csv.str();
    return r;
}

Result interpolate_cmd(const Options& o) {
    if (o.input.empty()) {
        throw InputError("interpolate needs --input <csv>");
    }
    const std::string name = o.kernel.empty() ? "brownian_bridge" : o.kernel;
    const Kernel k = catalog::by_name(name, o.sigma);
    std::ifstream in(o.input);
    if (!in) {
        throw InputError("cannot open input file '" + o.input + "'");
    }
    const int dim = k.domain().dim();
    SiteData data = read_sites_csv(in, dim);
    const Interpolant s = Interpolant::fit(k, data.sites, data.values);
    const int g = o.grid > 0 ? o.grid : (dim == 1 ? 101 : 21);
    std::vector<Point> eval;
    if (dim == 1) {
        eval = unit_grid(g);
    } else {
        for (const Point& b : unit_grid(g)) {
            for (const Point& a : unit_grid(g)) {
                eval.emplace_back(a[0], b[0]);
            }
        }
    }
    const std::vector<double> sv = s.evaluate(eval);
    std::ostringstream csv;
    csv << (dim == 1 ? "x,s\n" : "x1,x2,s\n");
    for (std::size_t i = 0; i < eval.size(); ++i) {
        if (dim == 1) {
            csv << num(eval[i][0]) << ',' << num(sv[i]) << '\n';
        } else {
            csv << num(eval[i][0]) << ',' << num(eval[i][1]) << ',' << num(sv[i]) << '\n';
        }
    }
    Result r;
    const double scale = data.values.cwiseAbs().maxCoeff() + 1.0;
    const double tol = tol_or(o, 1e-10 * scale);
    r.params = {{"kernel", name}, {"sigma", o.sigma}, {"input", o.input}, {"grid", g}, {"tolerance", tol}};
    r.max_residual = (s.gram() * s.coefficients() - data.values).cwiseAbs().maxCoeff();
    r.extra["sites"] = data.sites.size();
    r.extra["native_norm"] = s.native_norm();
    r.pass = r.max_residual <= tol;
    r.csv = csv.str();
    return r;
}

Result convergence_cmd(const Options& o) {
    const std::string name = o.kernel.empty() ? "brownian_bridge" : o.kernel;
    const std::string fname = o.function.empty() ? "sin_pi" : o.function;
    const Kernel k = catalog::by_name(name, o.sigma);
    const std::vector<int> counts = parse_int_list(o.counts.empty() ? "4,8,16,32" : o.counts, "--counts");
    const auto rows = convergence_study(k, function_by_name(fname), counts);
    Result r;
    r.params = {{"kernel", name}, {"sigma", o.sigma}, {"function", fname}, {"counts", counts}};
    std::ostringstream csv;
    csv << "N,sup_error\n";
    bool decreasing = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        csv << rows[i].sites << ',' << num(rows[i].sup_error) << '\n';
        if (i > 0 && !(rows[i].sup_error < rows[i - 1].sup_error)) {
            decreasing = false;
        }
    }
    const bool all_zero = std::all_of(rows.begin(), rows.end(), [](const ConvergenceRow& x) { return x.sup_error == 0.0; });
    const bool tenfold = rows.size() < 2 || rows.back().sup_error <= rows.front().sup_error / 10;
    r.max_residual = rows.back().sup_error;
    r.extra["strictly_decreasing"] = decreasing;
    r.extra["tenfold_reduction"] = tenfold;
    r.pass = all_zero || (decreasing && tenfold);
    r.csv = csv.str();
    return r;
}

Result tps_corrector(const Options& o) {
    const Point y = parse_point(o.y.empty() ? "0.5,0.5" : o.y, "--y");
    if (y.dim() != 2) {
        throw InputError("--y must be a 2D point x1,x2");
    }
    auto green = std::make_shared<ThinPlateGreen>(o.n);
    const CorrectorSolution& sol = green->corrector(y);
    const int n = o.n;
    // Symmetry probes: nodes nearest the quarter points, skipping y itself.
    std::vector<Point> probes;
    for (double a : {0.25, 0.75}) {
        for (double b : {0.25, 0.75}) {
            const Point p(std::round(a * n) / n, std::round(b * n) / n);
            if (!(p == y)) {
                probes.push_back(p);
            }
        }
    }
    green->prepare(probes);
    double symmetry = 0.0;
    for (const Point& p : probes) {
        symmetry = std::max(symmetry, std::abs((*green)(p, y) - (*green)(y, p)));
    }
    std::ostringstream csv;
    csv << "i,j,x1,x2,corrector\n";
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            const Point p = sol.grid.node(i, j);
            csv << i << ',' << j << ',' << num(p[0]) << ',' << num(p[1]) << ',' << num(sol.grid.at(i, j)) << '\n';
        }
    }
    Result r;
    const double tol = tol_or(o, 1e-9);
    r.params = {{"y", {y[0], y[1]}}, {"n", n}, {"tolerance", tol}};
    r.max_residual = sol.stencil_residual;
    r.extra["normal_derivative_mismatch"] = sol.normal_derivative_mismatch;
    r.extra["tangential_derivative_mismatch"] = sol.tangential_derivative_mismatch;
    r.extra["symmetry_discrepancy"] = symmetry;
    r.extra["green_at_source"] = (*green)(y, y);
    r.pass = sol.stencil_residual <= tol && symmetry <= 5e-3;
    r.csv = csv.str();
    return r;
}

Result membership_cmd(const Options& o) {
    const SpaceChoice c = space_by_name(o.space, o.sigma);
    const std::string fname = o.function.empty() ? "sin_half_pi" : o.function;
    const MembershipReport m = membership(c.space, function_by_name(fname), c.null_basis);
    Result r;
    r.params = {{"space", o.space}, {"sigma", o.sigma}, {"function", fname}};
    r.max_residual = m.decomposition_residual;
    r.extra["member"] = m.member;
    r.extra["fourier"] = std::vector<double>(m.fourier.data(), m.fourier.data() + m.fourier.size());
    r.extra["projection_residual"] = m.projection_residual;
    r.extra["norm_squared"] = m.norm_squared;
    r.extra["psi_min_eigenvalues"] = m.psi_min_eigenvalues;
    return r;
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--config", o.config, "JSON file with option values (flags override it)");
    sub->add_option("--output", o.output, "write CSV here instead of stdout");
    sub->add_option("--diagnostics", o.diagnostics, "write the JSON diagnostics block here");
    sub->add_option("--tolerance", o.tolerance, "pass/fail threshold on max_residual");
}

std::string config_token(const json& v, const std::string& key) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_integer()) {
        return std::to_string(v.get<long long>());
    }
    if (v.is_number()) {
        return num(v.get<double>());
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    if (v.is_array()) {
        std::string out;
        for (const json& e : v) {
            out += (out.empty() ? "" : ",") + config_token(e, key);
        }
        return out;
    }
    throw InputError("config key '" + key + "' has an unsupported value type");
}

std::string find_config_path(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            return args[i + 1];
        }
        if (args[i].rfind("--config=", 0) == 0) {
            return args[i].substr(9);
        }
    }
    return {};
}

void write_to(const std::string& path, std::ostream& fallback, const std::string& text) {
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw InputError("cannot write '" + path + "'");
    }
    f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Green-kernel construction, verification and interpolation driver", "greenkernel"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    Options o;

    using Handler = Result (*)(const Options&);
    std::vector<std::pair<CLI::App*, Handler>> commands;
    auto add = [&](const std::string& name, const std::string& help, Handler h) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub, o);
        commands.emplace_back(sub, h);
        return sub;
    };
    const std::string kernel_help = "catalog kernel: " + join(catalog::names());

    auto* ke = add("kernel-eval", "evaluate a catalog kernel on a grid or at one pair", kernel_eval);
    ke->add_option("--kernel", o.kernel, kernel_help);
    ke->add_option("--sigma", o.sigma, "Sobolev parameter");
    ke->add_option("--x", o.x, "first point (x or x1,x2)");
    ke->add_option("--y", o.y, "second point (y or y1,y2)");
    ke->add_option("--grid", o.grid, "points per axis on [0,1]");

    auto* cc = add("compose-check", "check K = G + R against the closed form", compose_check);
    cc->add_option("--kernel", o.kernel, "sobolev, brownian_motion or periodic");
    cc->add_option("--sigma", o.sigma, "Sobolev parameter");
    cc->add_option("--grid", o.grid, "points per axis on [0,1]");

    auto* vr = add("verify-reproducing", "residuals of (K(.,y), f)_H - f(y)", verify_reproducing_cmd);
    vr->add_option("--space", o.space, "brownian_bridge, brownian_motion, periodic, sobolev, sobolev_homogeneous");
    vr->add_option("--sigma", o.sigma, "Sobolev parameter");
    vr->add_option("--function", o.function, "test function name");
    vr->add_option("--points", o.points, "comma-separated interior points y");

    auto* on = add("orthonormalize", "B-Gram matrices before and after Gram-Schmidt", orthonormalize_cmd);
    on->add_option("--case", o.which, "all, one_x, x_one_minus_x, sobolev, thin_plate");
    on->add_option("--sigma", o.sigma, "Sobolev parameter");

    auto* mc = add("mercer-compare", "sup error of truncated eigen-expansions", mercer_compare);
    mc->add_option("--family", o.family, "bridge, sobolev, brownian_motion");
    mc->add_option("--sigma", o.sigma, "Sobolev parameter");
    mc->add_option("--N", o.N, "largest truncation");
    mc->add_option("--counts", o.counts, "comma-separated truncations (default 1,10,...,N)");
    mc->add_option("--grid", o.grid, "points per axis on [0,1]");

    auto* ec = add("eig-check", "eigen-transfer residuals and orthonormal-basis check", eig_check);
    ec->add_option("--family", o.family, "bridge, sobolev, brownian_motion");
    ec->add_option("--sigma", o.sigma, "Sobolev parameter");
    ec->add_option("--count", o.count, "number of eigenpairs");
    ec->add_option("--onb", o.onb, "pairs used by the orthonormal-basis check");
    ec->add_option("--onb-tolerance", o.onb_tolerance, "threshold for the orthonormal-basis check");

    auto* ip = add("interpolate", "fit a kernel interpolant to CSV data", interpolate_cmd);
    ip->add_option("--kernel", o.kernel, kernel_help);
    ip->add_option("--sigma", o.sigma, "Sobolev parameter");
    ip->add_option("--input", o.input, "CSV with header: x,value or x1,x2,value");
    ip->add_option("--grid", o.grid, "evaluation points per axis");

    auto* cv = add("convergence", "interpolation error versus number of sites", convergence_cmd);
    cv->add_option("--kernel", o.kernel, kernel_help);
    cv->add_option("--sigma", o.sigma, "Sobolev parameter");
    cv->add_option("--function", o.function, "test function name");
    cv->add_option("--counts", o.counts, "comma-separated site counts");

    auto* tc = add("tps-corrector", "solve the thin-plate corrector for one source", tps_corrector);
    tc->add_option("--y", o.y, "source point x1,x2");
    tc->add_option("--n", o.n, "grid intervals per axis");

    auto* mb = add("membership", "decide f in H_PB^A and report boundary data", membership_cmd);
    mb->add_option("--space", o.space, "brownian_bridge, brownian_motion, periodic, sobolev, sobolev_homogeneous");
    mb->add_option("--sigma", o.sigma, "Sobolev parameter");
    mb->add_option("--function", o.function, "test function name");

    try {
        std::vector<std::string> argv = args;
        const std::string config_path = find_config_path(args);
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) {
                throw InputError("cannot open config file '" + config_path + "'");
            }
            json cfg;
            try {
                cfg = json::parse(f);
            } catch (const json::parse_error& e) {
                throw InputError("config file '" + config_path + "' is not valid JSON: " + e.what());
            }
            if (!cfg.is_object()) {
                throw InputError("config file must hold a JSON object");
            }
            if (argv.empty() || argv[0].rfind("-", 0) == 0) {
                if (!cfg.contains("command") || !cfg["command"].is_string()) {
                    throw InputError("no command given on the command line or in the config");
                }
                argv.insert(argv.begin(), cfg["command"].get<std::string>());
            }
            CLI::App* sub = nullptr;
            try {
                sub = app.get_subcommand(argv[0]);
            } catch (const CLI::OptionNotFound&) {
                throw InputError("unknown command '" + argv[0] + "'");
            }
            std::vector<std::string> tokens;
            for (const auto& [key, value] : cfg.items()) {
                if (key == "command") {
                    continue;
                }
                if (key == "config" || sub->get_option_no_throw("--" + key) == nullptr) {
                    throw InputError("unknown config key '" + key + "' for command " + argv[0]);
                }
                tokens.push_back("--" + key);
                tokens.push_back(config_token(value, key));
            }
            // Config values first so that later command-line flags win.
            argv.insert(argv.begin() + 1, tokens.begin(), tokens.end());
        }
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    for (const auto& [sub, handler] : commands) {
        if (!sub->parsed()) {
            continue;
        }
        try {
            const Result r = handler(o);
            json diag = {{"command", sub->get_name()},
                         {"params", r.params},
                         {"max_residual", r.max_residual},
                         {"verdict", r.pass ? "pass" : "fail"}};
            for (const auto& [key, value] : r.extra.items()) {
                diag[key] = value;
            }
            const std::string text = diag.dump(2) + "\n";
            if (!r.csv.empty()) {
                write_to(o.output, out, r.csv);
                write_to(o.diagnostics, err, text);
            } else {
                write_to(o.diagnostics, out, text);
            }
            return r.pass ? kSuccess : kToleranceFailure;
        } catch (const NotPositiveDefiniteError& e) {
            err << "error: " << e.what() << '\n';
            return kInputError;
        } catch (const InputError& e) {
            err << "error: " << e.what() << '\n';
            return kInputError;
        } catch (const DomainError& e) {
            err << "error: " << e.what() << '\n';
            return kInputError;
        } catch (const PreconditionError& e) {
            err << "error: " << e.what() << '\n';
            return kInputError;
        } catch (const Error& e) {
            err << "error: " << e.what() << '\n';
            return kToleranceFailure;
        }
    }
    err << "error: no command selected\n";
    return kInputError;
}

}  // namespace greenkernel::cli
