// Copyright 2026 The bandlim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BANDLIM_VEC_HPP
#define BANDLIM_VEC_HPP

#include <array>
#include <cmath>
#include <cstddef>

namespace bandlim {

// Fixed-size 3-component vector. Objects working in dimension d < 3 keep the
// unused components at zero, so norms and dot products stay valid.
struct Vec3 {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  constexpr Vec3() = default;
  constexpr Vec3(double x, double y, double z) : v{x, y, z} {}

  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }

  Vec3& operator+=(const Vec3& o) {
    for (int i = 0; i < 3; ++i) v[i] += o.v[i];
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    for (int i = 0; i < 3; ++i) v[i] -= o.v[i];
    return *this;
  }
  Vec3& operator*=(double s) {
    for (int i = 0; i < 3; ++i) v[i] *= s;
    return *this;
  }

  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend Vec3 operator-(const Vec3& a) { return {-a.v[0], -a.v[1], -a.v[2]}; }
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a.v[0] * b.v[0] + a.v[1] * b.v[1] + a.v[2] * b.v[2];
}

inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.v[1] * b.v[2] - a.v[2] * b.v[1],
          a.v[2] * b.v[0] - a.v[0] * b.v[2],
          a.v[0] * b.v[1] - a.v[1] * b.v[0]};
}

// 3x3 matrix stored by rows. Lattice generators live in the rows, so a
// coordinate row-vector f maps to the point f * M = sum_i f_i * row_i.
struct Mat3 {
  std::array<Vec3, 3> row{};

  static Mat3 identity() {
    Mat3 m;
    m.row[0] = {1, 0, 0};
    m.row[1] = {0, 1, 0};
    m.row[2] = {0, 0, 1};
    return m;
  }

  Vec3& operator[](std::size_t i) { return row[i]; }
  const Vec3& operator[](std::size_t i) const { return row[i]; }
};

// Applies the row convention: result_j = sum_i f_i M_ij.
inline Vec3 apply(const Vec3& f, const Mat3& m) {
  Vec3 r;
  for (int j = 0; j < 3; ++j)
    r[j] = f[0] * m[0][j] + f[1] * m[1][j] + f[2] * m[2][j];
  return r;
}

inline Mat3 matmul(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (int i = 0; i < 3; ++i) c[i] = apply(a[i], b);
  return c;
}

inline Mat3 transpose(const Mat3& m) {
  Mat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

// Determinant of the leading d x d block.
inline double det(const Mat3& m, int dim) {
  switch (dim) {
    case 1:
      return m[0][0];
    case 2:
      return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    default:
      return dot(m[0], cross(m[1], m[2]));
  }
}

// Inverse of the leading d x d block, identity on the unused dimensions.
inline Mat3 inverse(const Mat3& m, int dim) {
  Mat3 r = Mat3::identity();
  if (dim == 1) {
    r[0][0] = 1.0 / m[0][0];
  } else if (dim == 2) {
    const double d = det(m, 2);
    r[0][0] = m[1][1] / d;
    r[0][1] = -m[0][1] / d;
    r[1][0] = -m[1][0] / d;
    r[1][1] = m[0][0] / d;
  } else {
    const double d = det(m, 3);
    const Vec3 c0 = cross(m[1], m[2]);
    const Vec3 c1 = cross(m[2], m[0]);
    const Vec3 c2 = cross(m[0], m[1]);
    for (int j = 0; j < 3; ++j) {
      r[j][0] = c0[j] / d;
      r[j][1] = c1[j] / d;
      r[j][2] = c2[j] / d;
    }
  }
  return r;
}

}  // namespace bandlim

#endif  // BANDLIM_VEC_HPP
