#include "galilei/group.hpp"

#include "galilei/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace galilei::group {

namespace {
constexpr double kRotationTol = 1e-12;
constexpr double kUnityTol = 1e-9;
constexpr std::size_t kReorthoEvery = 100;
}  // namespace

Rotation::Rotation(const Mat3& m) : m_(m) {
    if (orthogonality_defect() > kRotationTol) {
        throw Error(ErrorCode::InvalidArgument, "matrix is not a proper rotation");
    }
}

Rotation Rotation::from_trusted(const Mat3& m) {
    Rotation r;
    r.m_ = m;
    return r;
}

Rotation Rotation::about_z_quarter_turns(int k) {
    static constexpr int c[4] = {1, 0, -1, 0};
    static constexpr int s[4] = {0, 1, 0, -1};
    const int i = ((k % 4) + 4) % 4;
    Mat3 m;
    m << c[i], -s[i], 0, s[i], c[i], 0, 0, 0, 1;
    return from_trusted(m);
}

Rotation Rotation::reorthonormalized() const {
    Eigen::JacobiSVD<Mat3> svd(m_, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 q = svd.matrixU() * svd.matrixV().transpose();
    if (q.determinant() < 0) {
        Mat3 u = svd.matrixU();
        u.col(2) *= -1.0;
        q = u * svd.matrixV().transpose();
    }
    return from_trusted(q);
}

double Rotation::orthogonality_defect() const {
    const double orth = (m_.transpose() * m_ - Mat3::Identity()).cwiseAbs().maxCoeff();
    return std::max(orth, std::abs(m_.determinant() - 1.0));
}

GroupElement GroupElement::time_translation(double b) {
    GroupElement g;
    g.b = b;
    return g;
}

GroupElement GroupElement::translation(const Vec3& a) {
    GroupElement g;
    g.a = a;
    return g;
}

GroupElement GroupElement::boost(const Vec3& v) {
    GroupElement g;
    g.v = v;
    return g;
}

GroupElement GroupElement::rotation(const Rotation& R) {
    GroupElement g;
    g.R = R;
    return g;
}

GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
    const Mat3& R1 = g1.R.matrix();
    GroupElement out;
    out.b = g1.b + g2.b;
    out.a = g1.a + R1 * g2.a - g1.v * g2.b;
    out.v = g1.v + R1 * g2.v;
    out.R = g1.R * g2.R;
    return out;
}

GroupElement inverse(const GroupElement& g) {
    const Rotation Rinv = g.R.inverse();
    GroupElement out;
    out.b = -g.b;
    out.a = -(Rinv.matrix() * (g.a + g.v * g.b));
    out.v = -(Rinv.matrix() * g.v);
    out.R = Rinv;
    return out;
}

GroupElement compose_chain(std::span<const GroupElement> chain) {
    GroupElement acc;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        acc = compose(acc, chain[i]);
        if ((i + 1) % kReorthoEvery == 0) {
            acc.R = acc.R.reorthonormalized();
        }
    }
    return acc;
}

double distance(const GroupElement& g1, const GroupElement& g2) {
    double d = std::abs(g1.b - g2.b);
    d = std::max(d, (g1.a - g2.a).cwiseAbs().maxCoeff());
    d = std::max(d, (g1.v - g2.v).cwiseAbs().maxCoeff());
    d = std::max(d, (g1.R.matrix() - g2.R.matrix()).cwiseAbs().maxCoeff());
    return d;
}

double wrap_phase(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(phi, two_pi);
    if (r <= -std::numbers::pi) r += two_pi;
    return r;
}

double phase_residual(double phi) { return std::abs(wrap_phase(phi)); }

FactorSystem::FactorSystem(double mass, double sign) : mass_(mass) {
    if (!(mass >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "mass must be nonnegative");
    }
    xi_ = [mass, sign](const GroupElement& g1, const GroupElement& g2) {
        const double kinetic = 0.5 * g1.v.squaredNorm() * g2.b;
        const double cross = g1.v.dot(g1.R.matrix() * g2.a);
        return sign * mass * (kinetic - cross);
    };
}

FactorSystem FactorSystem::from_exponent(double mass, Exponent xi) {
    FactorSystem fs(mass);
    fs.xi_ = std::move(xi);
    return fs;
}

double FactorSystem::exponent(const GroupElement& g1, const GroupElement& g2) const {
    return xi_(g1, g2);
}

double gamma(const FactorSystem& fs, const GroupElement& g1, const GroupElement& g2) {
    return fs.exponent(g1, g2);
}

std::complex<double> omega(const FactorSystem& fs, const GroupElement& g1, const GroupElement& g2) {
    return std::polar(1.0, gamma(fs, g1, g2));
}

double cocycle_residual(const FactorSystem& fs, const GroupElement& g1, const GroupElement& g2,
                        const GroupElement& g3) {
    const double lhs = fs.exponent(g1, compose(g2, g3)) + fs.exponent(g2, g3);
    const double rhs = fs.exponent(g1, g2) + fs.exponent(compose(g1, g2), g3);
    return phase_residual(lhs - rhs);
}

ExtendedElement extended_compose(const FactorSystem& fs, const ExtendedElement& x1,
                                 const ExtendedElement& x2) {
    return {x1.theta + x2.theta + gamma(fs, x1.g, x2.g), compose(x1.g, x2.g)};
}

Gauge::Gauge(Fn fn) : fn_(std::move(fn)) {
    if (fn_(GroupElement::identity()) != 0.0) {
        throw Error(ErrorCode::InvalidArgument, "gauge must vanish at the identity");
    }
}

Gauge Gauge::trivial() {
    return Gauge([](const GroupElement&) { return 0.0; });
}

Gauge Gauge::negated() const {
    return Gauge([fn = fn_](const GroupElement& g) { return -fn(g); });
}

FactorSystem gauge_transform(const FactorSystem& fs, const Gauge& gauge) {
    return FactorSystem::from_exponent(
        fs.mass(), [fs, gauge](const GroupElement& g1, const GroupElement& g2) {
            return fs.exponent(g1, g2) + gauge(g1) + gauge(g2) - gauge(compose(g1, g2));
        });
}

UnityCheck is_equivalent_to_unity(const FactorSystem& fs, const Gauge& gauge,
                                  std::span<const std::pair<GroupElement, GroupElement>> sample) {
    if (sample.empty()) {
        throw Error(ErrorCode::EmptySample, "no group element pairs supplied");
    }
    const FactorSystem transformed = gauge_transform(fs, gauge);
    UnityCheck out;
    for (const auto& [g1, g2] : sample) {
        out.max_residual = std::max(out.max_residual, phase_residual(transformed.exponent(g1, g2)));
    }
    out.equivalent = out.max_residual < kUnityTol;
    return out;
}

}  // namespace galilei::group
