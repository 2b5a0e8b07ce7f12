#include "grouplab/quaternion.hpp"

#include <algorithm>
#include <stdexcept>

namespace grouplab {

std::array<double, 9> quat_to_matrix(const Quat& q) {
    double w = q.w, x = q.x, y = q.y, z = q.z;
    return {1 - 2 * (y * y + z * z), 2 * (x * y - w * z),     2 * (x * z + w * y),
            2 * (x * y + w * z),     1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
            2 * (x * z - w * y),     2 * (y * z + w * x),     1 - 2 * (x * x + y * y)};
}

std::vector<Quat> cyclic_rotations_z(int n) {
    if (n <= 0) throw std::invalid_argument("cyclic_rotations_z: n must be positive");
    std::vector<Quat> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        double h = M_PI * k / n;  // half of 2*pi*k/n
        out.push_back({std::cos(h), 0, 0, std::sin(h)});
    }
    return out;
}

std::vector<Quat> dihedral_rotations(int n) {
    std::vector<Quat> out = cyclic_rotations_z(n);
    for (int k = 0; k < n; ++k) {
        double a = M_PI * k / n;  // flip axis angle in the xy-plane
        out.push_back({0, std::cos(a), std::sin(a), 0});
    }
    return out;
}

namespace {

/// Reduce a quaternion list to one representative per rotation (q ~ -q).
std::vector<Quat> dedup_rotations(const std::vector<Quat>& quats, size_t expected) {
    const double tol = 1e-9;
    std::vector<Quat> out;
    for (const auto& q : quats) {
        bool dup = false;
        for (const auto& e : out)
            if (std::abs(std::abs(e.dot(q)) - 1.0) < tol) { dup = true; break; }
        if (!dup) out.push_back(q);
    }
    if (out.size() != expected) throw std::logic_error("dedup_rotations: wrong order");
    return out;
}

/// The 24 unit quaternions of the binary tetrahedral group:
/// 8 unit-axis quaternions plus the 16 with all coordinates +-1/2.
std::vector<Quat> binary_tetrahedral_quats() {
    std::vector<Quat> out;
    for (int pos = 0; pos < 4; ++pos)
        for (int s = -1; s <= 1; s += 2) {
            double c[4] = {0, 0, 0, 0};
            c[pos] = s;
            out.push_back({c[0], c[1], c[2], c[3]});
        }
    for (int sw = -1; sw <= 1; sw += 2)
        for (int sx = -1; sx <= 1; sx += 2)
            for (int sy = -1; sy <= 1; sy += 2)
                for (int sz = -1; sz <= 1; sz += 2)
                    out.push_back({sw * 0.5, sx * 0.5, sy * 0.5, sz * 0.5});
    return out;
}

std::vector<std::array<int, 4>> permutations4(bool even_only) {
    std::vector<std::array<int, 4>> out;
    std::array<int, 4> p = {0, 1, 2, 3};
    do {
        int inversions = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (p[i] > p[j]) ++inversions;
        if (!even_only || inversions % 2 == 0) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace

std::vector<Quat> tetrahedral_rotations() {
    return dedup_rotations(binary_tetrahedral_quats(), 12);
}

std::vector<Quat> octahedral_rotations() {
    // binary tetrahedral plus the 24 quaternions with two coordinates +-1/sqrt(2)
    std::vector<Quat> quats = binary_tetrahedral_quats();
    double r = 1.0 / std::sqrt(2.0);
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            for (int sa = -1; sa <= 1; sa += 2)
                for (int sb = -1; sb <= 1; sb += 2) {
                    double c[4] = {0, 0, 0, 0};
                    c[a] = sa * r;
                    c[b] = sb * r;
                    quats.push_back({c[0], c[1], c[2], c[3]});
                }
    return dedup_rotations(quats, 24);
}

std::vector<Quat> icosahedral_rotations() {
    // binary tetrahedral plus the 96 even permutations of (0, +-1, +-1/phi, +-phi)/2
    // (vertices of the 600-cell)
    std::vector<Quat> quats = binary_tetrahedral_quats();
    double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    double vals[4] = {0, 0.5, 0.5 / phi, 0.5 * phi};
    for (const auto& p : permutations4(true))
        for (int s1 = -1; s1 <= 1; s1 += 2)
            for (int s2 = -1; s2 <= 1; s2 += 2)
                for (int s3 = -1; s3 <= 1; s3 += 2) {
                    double base[4] = {vals[p[0]], vals[p[1]], vals[p[2]], vals[p[3]]};
                    int signs[4] = {1, 1, 1, 1};
                    int si = 0;
                    int ss[3] = {s1, s2, s3};
                    for (int i = 0; i < 4; ++i)
                        if (base[i] != 0) signs[i] = ss[si++];
                    quats.push_back({signs[0] * base[0], signs[1] * base[1], signs[2] * base[2],
                                     signs[3] * base[3]});
                }
    return dedup_rotations(quats, 60);
}

std::vector<Quat> binary_lift(const std::vector<Quat>& rotations) {
    std::vector<Quat> out;
    out.reserve(rotations.size() * 2);
    for (const auto& q : rotations) {
        out.push_back(q);
        out.push_back({-q.w, -q.x, -q.y, -q.z});
    }
    return out;
}

std::vector<NamedRotationGroup> finite_rotation_group_catalog(int max_cyclic, int max_dihedral) {
    std::vector<NamedRotationGroup> out;
    for (int n = 1; n <= max_cyclic; ++n)
        out.push_back({"C" + std::to_string(n), cyclic_rotations_z(n)});
    for (int n = 2; n <= max_dihedral; ++n)
        out.push_back({"D" + std::to_string(n), dihedral_rotations(n)});
    out.push_back({"T", tetrahedral_rotations()});
    out.push_back({"O", octahedral_rotations()});
    out.push_back({"I", icosahedral_rotations()});
    return out;
}

}  // namespace grouplab
