#pragma once

// Galilei group arithmetic and its projective factor systems.
//
// Parametrization g = (b, a, v, R). Products are taken with the right factor
// acting first under the spacetime action
//
//     x' = R x + v t + a,     t' = t - b,
//
// which is the convention under which the momentum-space operator in
// rep.hpp composes as a ray representation. Explicitly
//
//     g1 g2 = (b1 + b2, a1 + R1 a2 - v1 b2, v1 + R1 v2, R1 R2).

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace galilei::group {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Proper rotation stored as a 3x3 matrix.
class Rotation {
public:
    Rotation() : m_(Mat3::Identity()) {}

    /// Throws Error(InvalidArgument) unless R^T R = I and det R = 1 within 1e-12.
    explicit Rotation(const Mat3& m);

    static Rotation identity() { return Rotation(); }
    static Rotation about_z_quarter_turns(int k);
    /// Unchecked construction; used internally after products of valid rotations.
    static Rotation from_trusted(const Mat3& m);

    const Mat3& matrix() const { return m_; }
    Rotation inverse() const { return from_trusted(m_.transpose()); }
    Rotation operator*(const Rotation& o) const { return from_trusted(m_ * o.m_); }

    /// Nearest orthogonal matrix (polar factor, via SVD).
    Rotation reorthonormalized() const;

    /// max |R^T R - I| and |det R - 1|.
    double orthogonality_defect() const;

private:
    Mat3 m_;
};

struct GroupElement {
    double b = 0.0;
    Vec3 a = Vec3::Zero();
    Vec3 v = Vec3::Zero();
    Rotation R;

    static GroupElement identity() { return {}; }
    static GroupElement time_translation(double b);
    static GroupElement translation(const Vec3& a);
    static GroupElement boost(const Vec3& v);
    static GroupElement rotation(const Rotation& R);
};

/// Element of the central extension: theta is kept on the real line.
struct ExtendedElement {
    double theta = 0.0;
    GroupElement g;
};

GroupElement compose(const GroupElement& g1, const GroupElement& g2);
GroupElement inverse(const GroupElement& g);

/// Product of a chain; rotations are re-orthonormalized every 100 factors.
GroupElement compose_chain(std::span<const GroupElement> chain);

/// Max componentwise difference (b, a, v, R entries).
double distance(const GroupElement& g1, const GroupElement& g2);

/// Reduce an angle to (-pi, pi].
double wrap_phase(double phi);

/// Exponent residual as distance from the nearest multiple of 2 pi.
double phase_residual(double phi);

/// Bargmann factor system of mass m: omega = exp(i m gamma).
///
/// `sign` exists so that the verification suite can run a negative
/// control with the exponent flipped; physical code leaves it at +1.
class FactorSystem {
public:
    using Exponent = std::function<double(const GroupElement&, const GroupElement&)>;

    explicit FactorSystem(double mass, double sign = 1.0);

    /// Factor system given by an arbitrary full exponent xi(g1, g2).
    static FactorSystem from_exponent(double mass, Exponent xi);

    double mass() const { return mass_; }

    /// Full exponent xi = m * gamma (plus any gauge terms).
    double exponent(const GroupElement& g1, const GroupElement& g2) const;

private:
    double mass_;
    Exponent xi_;
};

/// gamma(g1, g2) = 1/2 |v1|^2 b2 - v1 . (R1 a2), scaled by fs.mass().
double gamma(const FactorSystem& fs, const GroupElement& g1, const GroupElement& g2);

std::complex<double> omega(const FactorSystem& fs, const GroupElement& g1, const GroupElement& g2);

/// |xi(g1, g2 g3) + xi(g2, g3) - xi(g1, g2) - xi(g1 g2, g3)| reduced mod 2 pi.
double cocycle_residual(const FactorSystem& fs, const GroupElement& g1, const GroupElement& g2,
                        const GroupElement& g3);

ExtendedElement extended_compose(const FactorSystem& fs, const ExtendedElement& x1,
                                 const ExtendedElement& x2);

/// Real phase function with zeta(e) = 0.
class Gauge {
public:
    using Fn = std::function<double(const GroupElement&)>;

    /// Throws Error(InvalidArgument) if fn(identity) != 0.
    explicit Gauge(Fn fn);
    static Gauge trivial();

    double operator()(const GroupElement& g) const { return fn_(g); }
    Gauge negated() const;

private:
    Fn fn_;
};

/// xi'(g1, g2) = xi(g1, g2) + zeta(g1) + zeta(g2) - zeta(g1 g2).
FactorSystem gauge_transform(const FactorSystem& fs, const Gauge& gauge);

struct UnityCheck {
    bool equivalent = false;
    double max_residual = 0.0;
};

/// Does the gauge-transformed exponent vanish mod 2 pi on every sampled
/// pair (tolerance 1e-9)? Throws Error(EmptySample) on an empty sample.
UnityCheck is_equivalent_to_unity(const FactorSystem& fs, const Gauge& gauge,
                                  std::span<const std::pair<GroupElement, GroupElement>> sample);

}  // namespace galilei::group
