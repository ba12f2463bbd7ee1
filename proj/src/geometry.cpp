#include "tomolab/geometry.hpp"

#include <numbers>
#include <stdexcept>

namespace tomolab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
    t = std::fmod(t, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t;
}
}  // namespace

LineNormal canonicalize(LineNormal line) {
    line.theta = wrap_angle(line.theta);
    if (line.r < 0.0) {
        line.r = -line.r;
        line.theta = wrap_angle(line.theta + std::numbers::pi);
    }
    if (line.r == 0.0 && line.theta >= std::numbers::pi)
        line.theta -= std::numbers::pi;
    return line;
}

Ray normal_to_ray(double r, double theta) {
    return {normal_dir(theta) * r, line_dir(theta)};
}

LineNormal ray_to_normal(const Ray& ray) {
    if (std::abs(ray.v.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("ray_to_normal: direction must be unit");
    // v = line_dir(theta) = (-sin, cos)  =>  normal_dir(theta) = (v.y, -v.x).
    double theta = std::atan2(-ray.v.x, ray.v.y);
    double r = ray.x.dot({ray.v.y, -ray.v.x});
    return canonicalize({r, theta});
}

double exit_time(Vec2 x, Vec2 v) {
    double xx = x.dot(x);
    if (xx > 1.0 + 1e-12) throw std::invalid_argument("exit_time: |x| > 1");
    double xv = x.dot(v);
    double disc = 1.0 - xx + xv * xv;
    if (disc < 0.0) disc = 0.0; // roundoff at tangency
    double tau = -xv + std::sqrt(disc);
    return tau > 0.0 ? tau : 0.0;
}

std::optional<std::pair<Vec2, Vec2>> chord_endpoints(LineNormal line) {
    if (std::abs(line.r) >= 1.0) return std::nullopt;
    double half = std::sqrt(1.0 - line.r * line.r);
    Vec2 base = normal_dir(line.theta) * line.r;
    Vec2 dir = line_dir(line.theta);
    return std::make_pair(base - dir * half, base + dir * half);
}

}  // namespace tomolab
