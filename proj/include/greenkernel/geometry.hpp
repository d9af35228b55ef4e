#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace greenkernel {

/// A point in one or two dimensions. 1D points convert implicitly from double.
class Point {
public:
    Point(double x) : dim_(1), coords_{x, 0.0} {}  // NOLINT(google-explicit-constructor)
    Point(double x1, double x2) : dim_(2), coords_{x1, x2} {}

    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] double operator[](int axis) const { return coords_[static_cast<std::size_t>(axis)]; }
    [[nodiscard]] double x() const { return coords_[0]; }

    [[nodiscard]] Point with(int axis, double value) const {
        Point p = *this;
        p.coords_[static_cast<std::size_t>(axis)] = value;
        return p;
    }

    friend bool operator==(const Point& a, const Point& b) {
        return a.dim_ == b.dim_ && a.coords_[0] == b.coords_[0] &&
               (a.dim_ == 1 || a.coords_[1] == b.coords_[1]);
    }

    [[nodiscard]] std::string to_string() const;

private:
    int dim_;
    std::array<double, 2> coords_;
};

/// Multi-index of partial derivative orders. Unused axes stay zero.
struct MultiIndex {
    std::array<int, 2> order{0, 0};

    MultiIndex() = default;
    MultiIndex(int a0) : order{a0, 0} {}  // NOLINT(google-explicit-constructor)
    MultiIndex(int a0, int a1) : order{a0, a1} {}

    [[nodiscard]] int total() const { return order[0] + order[1]; }
    [[nodiscard]] int operator[](int axis) const { return order[static_cast<std::size_t>(axis)]; }

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
        return {a.order[0] + b.order[0], a.order[1] + b.order[1]};
    }
    friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
        return {a.order[0] - b.order[0], a.order[1] - b.order[1]};
    }
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

struct Interval {
    double lo;
    double hi;
    [[nodiscard]] double length() const { return hi - lo; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

enum class DomainKind { interval, rectangle };

/// One straight edge of a rectangle, walked from `start` to `end`.
struct Edge {
    Point start;
    Point end;
    int axis;  // axis the edge runs along
    [[nodiscard]] double length() const;
    [[nodiscard]] Point at(double t) const;  // t in [0,1]
};

/// An open interval (a,b) or axis-aligned rectangle with its boundary trace.
class Domain {
public:
    static Domain interval(double a, double b);
    static Domain rectangle(Interval x1, Interval x2);
    static Domain unit_interval() { return interval(0.0, 1.0); }
    static Domain unit_square() { return rectangle({0.0, 1.0}, {0.0, 1.0}); }

    [[nodiscard]] DomainKind kind() const { return kind_; }
    [[nodiscard]] int dim() const { return kind_ == DomainKind::interval ? 1 : 2; }
    [[nodiscard]] const Interval& axis(int i) const { return axes_[static_cast<std::size_t>(i)]; }

    [[nodiscard]] bool contains(const Point& p) const;  // closure
    [[nodiscard]] bool is_interior(const Point& p) const;
    [[nodiscard]] bool on_boundary(const Point& p) const;

    /// Counterclockwise edges starting at the lower-left corner (d=2 only).
    [[nodiscard]] std::vector<Edge> edges() const;

    /// Deterministic boundary samples: {a, b} for d=1; for d=2 `per_edge`
    /// points on each edge, counterclockwise from the lower-left corner, corners
    /// included once.
    [[nodiscard]] std::vector<Point> boundary_samples(int per_edge = 8) const;

    /// Deterministic interior samples, `per_axis` per axis, equispaced away from the boundary.
    [[nodiscard]] std::vector<Point> interior_samples(int per_axis = 10) const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Domain&, const Domain&) = default;

private:
    Domain(DomainKind kind, Interval x1, Interval x2) : kind_(kind), axes_{x1, x2} {}

    DomainKind kind_;
    std::array<Interval, 2> axes_;
};

}  // namespace greenkernel
