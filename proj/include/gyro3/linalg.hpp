#pragma once

#include <Eigen/Dense>

namespace gyro3 {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Skew matrix with hat(u) * w == u.cross(w).
inline Mat3 hat(const Vec3& v)
{
    Mat3 m;
    m << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
         -v.y(), v.x(), 0.0;
    return m;
}

inline Mat3 diag3(double a, double c)
{
    return Vec3(a, a, c).asDiagonal();
}

} // namespace gyro3
