#include "greenkernel/geometry.hpp"

#include <cmath>
#include <cstdio>

#include "greenkernel/errors.hpp"

namespace greenkernel {

std::string Point::to_string() const {
    char buf[96];
    if (dim_ == 1) {
        std::snprintf(buf, sizeof buf, "(%.17g)", coords_[0]);
    } else {
        std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", coords_[0], coords_[1]);
    }
    return buf;
}

double Edge::length() const {
    return std::abs(end[axis] - start[axis]);
}

Point Edge::at(double t) const {
    return start.with(axis, start[axis] + t * (end[axis] - start[axis]));
}

Domain Domain::interval(double a, double b) {
    if (!(a < b)) {
        throw DomainError("interval requires a < b");
    }
    return Domain(DomainKind::interval, {a, b}, {0.0, 0.0});
}

Domain Domain::rectangle(Interval x1, Interval x2) {
    if (!(x1.lo < x1.hi) || !(x2.lo < x2.hi)) {
        throw DomainError("rectangle requires lo < hi on both axes");
    }
    return Domain(DomainKind::rectangle, x1, x2);
}

bool Domain::contains(const Point& p) const {
    if (p.dim() != dim()) {
        return false;
    }
    for (int i = 0; i < dim(); ++i) {
        if (p[i] < axis(i).lo || p[i] > axis(i).hi) {
            return false;
        }
    }
    return true;
}

bool Domain::is_interior(const Point& p) const {
    if (p.dim() != dim()) {
        return false;
    }
    for (int i = 0; i < dim(); ++i) {
        if (!(p[i] > axis(i).lo && p[i] < axis(i).hi)) {
            return false;
        }
    }
    return true;
}

bool Domain::on_boundary(const Point& p) const {
    return contains(p) && !is_interior(p);
}

std::vector<Edge> Domain::edges() const {
    if (dim() != 2) {
        throw DomainError("edges() is only defined for rectangles");
    }
    const Interval& h = axes_[0];
    const Interval& v = axes_[1];
    return {
        Edge{Point(h.lo, v.lo), Point(h.hi, v.lo), 0},  // bottom
        Edge{Point(h.hi, v.lo), Point(h.hi, v.hi), 1},  // right
        Edge{Point(h.hi, v.hi), Point(h.lo, v.hi), 0},  // top
        Edge{Point(h.lo, v.hi), Point(h.lo, v.lo), 1},  // left
    };
}

std::vector<Point> Domain::boundary_samples(int per_edge) const {
    if (dim() == 1) {
        return {Point(axes_[0].lo), Point(axes_[0].hi)};
    }
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(4 * per_edge));
    // Half-open edges: each corner is the start of exactly one edge.
    for (const Edge& e : edges()) {
        for (int i = 0; i < per_edge; ++i) {
            out.push_back(e.at(static_cast<double>(i) / per_edge));
        }
    }
    return out;
}

std::vector<Point> Domain::interior_samples(int per_axis) const {
    auto coord = [&](int ax, int i) {
        const Interval& iv = axis(ax);
        return iv.lo + iv.length() * (i + 0.5) / per_axis;
    };
    std::vector<Point> out;
    if (dim() == 1) {
        for (int i = 0; i < per_axis; ++i) {
            out.emplace_back(coord(0, i));
        }
    } else {
        for (int i = 0; i < per_axis; ++i) {
            for (int j = 0; j < per_axis; ++j) {
                out.emplace_back(coord(0, i), coord(1, j));
            }
        }
    }
    return out;
}

std::string Domain::to_string() const {
    char buf[160];
    if (dim() == 1) {
        std::snprintf(buf, sizeof buf, "(%g, %g)", axes_[0].lo, axes_[0].hi);
    } else {
        std::snprintf(buf, sizeof buf, "(%g, %g) x (%g, %g)", axes_[0].lo, axes_[0].hi, axes_[1].lo,
                      axes_[1].hi);
    }
    return buf;
}

IntegrandError::IntegrandError(const Point& where, double value)
    : Error("non-finite integrand value " + std::to_string(value) + " at " + where.to_string()),
      where_(where) {}

DegeneracyError::DegeneracyError(std::size_t index, double norm)
    : Error("basis function " + std::to_string(index) + " is degenerate under the boundary " +
            "semi-inner product (projected norm " + std::to_string(norm) + ")"),
      index_(index) {}

}  // namespace greenkernel
