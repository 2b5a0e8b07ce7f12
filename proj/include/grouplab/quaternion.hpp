#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace grouplab {

/// Unit quaternion. Doubles as an SU(2) element (exactly) and as an SO(3)
/// element (up to sign; all SO(3) distances below are sign-independent).
struct Quat {
    double w = 1, x = 0, y = 0, z = 0;

    Quat() = default;
    Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    Quat operator*(const Quat& q) const {
        return {w * q.w - x * q.x - y * q.y - z * q.z,
                w * q.x + x * q.w + y * q.z - z * q.y,
                w * q.y - x * q.z + y * q.w + z * q.x,
                w * q.z + x * q.y - y * q.x + z * q.w};
    }
    Quat conj() const { return {w, -x, -y, -z}; }
    double dot(const Quat& q) const { return w * q.w + x * q.x + y * q.y + z * q.z; }
    double norm() const { return std::sqrt(dot(*this)); }

    Quat normalized() const {
        double n = norm();
        return {w / n, x / n, y / n, z / n};
    }
};

/// exp of the axis-angle vector u: rotation by |u| about u/|u|.
/// As a quaternion this is (cos(|u|/2), sin(|u|/2) u/|u|).
inline Quat quat_exp_axis_angle(double ux, double uy, double uz) {
    double t = std::sqrt(ux * ux + uy * uy + uz * uz);
    if (t < 1e-300) return {1, 0, 0, 0};
    double h = t / 2;
    double s = std::sin(h) / t;
    return {std::cos(h), s * ux, s * uy, s * uz};
}

/// Frobenius distance between the two rotation matrices: 2*sqrt(2)*|sin(r/2)|
/// with r the relative rotation angle; computed as sqrt(8 (1 - s^2)) with
/// s = <q1, q2>. Independent of quaternion sign.
inline double so3_distance(const Quat& a, const Quat& b) {
    double s = a.dot(b);
    double v = 1.0 - s * s;
    if (v < 0) v = 0;
    return std::sqrt(8.0 * v);
}

/// Frobenius distance between the two SU(2) matrices: sqrt(2)*|q1 - q2| as
/// 4-vectors. Sign matters here; SU(2) is the full unit quaternion group.
inline double su2_distance(const Quat& a, const Quat& b) {
    double dw = a.w - b.w, dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(2.0 * (dw * dw + dx * dx + dy * dy + dz * dz));
}

/// 3x3 rotation matrix of the quaternion (row-major).
std::array<double, 9> quat_to_matrix(const Quat& q);

/// Named finite rotation groups, as quaternion element lists (one quaternion
/// per rotation; sign choice irrelevant for SO(3) use).
std::vector<Quat> cyclic_rotations_z(int n);
std::vector<Quat> dihedral_rotations(int n);   // order 2n: C_n about z plus flips
std::vector<Quat> tetrahedral_rotations();     // order 12
std::vector<Quat> octahedral_rotations();      // order 24
std::vector<Quat> icosahedral_rotations();     // order 60

/// Binary lifts: the full quaternion preimages (both signs), used on SU(2).
std::vector<Quat> binary_lift(const std::vector<Quat>& rotations);

/// Catalog entry for the fixed candidate list of finite subgroups of SO(3).
struct NamedRotationGroup {
    std::string name;
    std::vector<Quat> elements;
};

/// Cyclic C_1..C_max_cyclic, dihedral D_2..D_{max_dihedral}, and the three
/// exceptional groups.
std::vector<NamedRotationGroup> finite_rotation_group_catalog(int max_cyclic = 60,
                                                              int max_dihedral = 30);

}  // namespace grouplab
