// SPDX-License-Identifier: Apache-2.0
//
// Two-component complex fields (Jones vectors / pulse-pair amplitudes) and
// the 2x2 elements that act on them: polarizers, PBS port projectors, and
// interferometer phase arms.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace epb {

using Cplx = std::complex<double>;

/// Field along two orthogonal modes: x/y polarization, or the long/short
/// path pair of an interferometer. Immutable value type.
struct FieldVec2 {
    Cplx c0{};
    Cplx c1{};
};

inline FieldVec2 operator+(const FieldVec2& a, const FieldVec2& b)
{
    return {a.c0 + b.c0, a.c1 + b.c1};
}

inline FieldVec2 operator-(const FieldVec2& a, const FieldVec2& b)
{
    return {a.c0 - b.c0, a.c1 - b.c1};
}

inline FieldVec2 operator-(const FieldVec2& a)
{
    return {-a.c0, -a.c1};
}

inline FieldVec2 operator*(const Cplx& s, const FieldVec2& v)
{
    return {s * v.c0, s * v.c1};
}

/// |c0|^2 + |c1|^2
inline double norm2(const FieldVec2& v)
{
    return std::norm(v.c0) + std::norm(v.c1);
}

/// Conjugate-bilinear inner product conj(a0) b0 + conj(a1) b1.
inline Cplx inner_conj(const FieldVec2& a, const FieldVec2& b)
{
    return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

/// 2x2 complex operator, row major.
struct Mat2 {
    Cplx m00{};
    Cplx m01{};
    Cplx m10{};
    Cplx m11{};
};

inline Mat2 operator+(const Mat2& a, const Mat2& b)
{
    return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

inline Mat2 operator-(const Mat2& a, const Mat2& b)
{
    return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}

inline Mat2 operator-(const Mat2& a)
{
    return {-a.m00, -a.m01, -a.m10, -a.m11};
}

inline Mat2 operator*(const Cplx& s, const Mat2& m)
{
    return {s * m.m00, s * m.m01, s * m.m10, s * m.m11};
}

inline Mat2 operator*(const Mat2& a, const Mat2& b)
{
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

inline Mat2 mat2_identity()
{
    return {Cplx{1.0}, Cplx{0.0}, Cplx{0.0}, Cplx{1.0}};
}

/// Matrix-vector product m * e.
inline FieldVec2 apply(const Mat2& m, const FieldVec2& e)
{
    return {m.m00 * e.c0 + m.m01 * e.c1, m.m10 * e.c0 + m.m11 * e.c1};
}

/// Transition matrix of an ideal linear polarizer with transmission axis at
/// angle theta: the rank-1 projector [[cos^2, cos sin], [sin cos, sin^2]].
/// Real, symmetric, idempotent, eigenvalues {1, 0}.
inline Mat2 polarizer(double theta)
{
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double cs = c * s;
    return {Cplx{c * c}, Cplx{cs}, Cplx{cs}, Cplx{s * s}};
}

/// Scalar amplitude transmitted along the analyzer axis u(theta) =
/// (cos theta, sin theta). |project(e, theta)|^2 equals the intensity
/// behind polarizer(theta).
inline Cplx project(const FieldVec2& e, double theta)
{
    return e.c0 * std::cos(theta) + e.c1 * std::sin(theta);
}

/// Unit-norm pulse pair (e^{i phi}, 1)/sqrt(2): equal split between the long
/// and short path, with the long path carrying the extra phase phi. The
/// common carrier phase is factored out.
inline FieldVec2 phase_arm(double phi)
{
    const double a = 1.0 / std::numbers::sqrt2;
    return {std::polar(a, phi), Cplx{a}};
}

}  // namespace epb
