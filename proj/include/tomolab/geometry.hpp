#pragma once

#include <cmath>
#include <optional>
#include <utility>

namespace tomolab {

struct Vec2 {
    double x = 0.0, y = 0.0;
    Vec2 operator+(Vec2 r) const { return {x + r.x, y + r.y}; }
    Vec2 operator-(Vec2 r) const { return {x - r.x, y - r.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Vec2 r) const { return x * r.x + y * r.y; }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2 normal_dir(double theta) { return {std::cos(theta), std::sin(theta)}; }
// Direction along the line L_{r,theta}: the normal rotated by +pi/2.
inline Vec2 line_dir(double theta) { return {-std::sin(theta), std::cos(theta)}; }

// Line {x : x . v_theta = r} in normal parametrization. (r, theta) and
// (-r, theta + pi) denote the same unoriented line.
struct LineNormal {
    double r = 0.0;
    double theta = 0.0;
};

struct Ray {
    Vec2 x;
    Vec2 v; // unit within 1e-12
};

// Canonical unoriented representative: r >= 0, with theta in [0, pi) when r = 0.
LineNormal canonicalize(LineNormal line);

// Unit-speed ray with base point r*v_theta (closest point to the origin) and
// direction v_theta^perp.
Ray normal_to_ray(double r, double theta);

// Inverse of normal_to_ray on canonical representatives.
LineNormal ray_to_normal(const Ray& ray);

// Time for the geodesic from (x, v) to escape the unit disc:
// tau = -x.v + sqrt(1 - |x|^2 + (x.v)^2). Rejects |x| > 1.
double exit_time(Vec2 x, Vec2 v);

// Unit-circle intersections of the line, ordered by v_theta^perp.
// Empty for |r| >= 1 (tangent lines count as no chord).
std::optional<std::pair<Vec2, Vec2>> chord_endpoints(LineNormal line);

}  // namespace tomolab
