//! Value-semantic 3-vectors and 4×4 matrices.
//!
//! Matrices are stored column-major as a flat array of 16 scalars, the same
//! layout OpenGL consumes: element `(row, col)` lives at `m[col * 4 + row]`
//! and the translation of a pose occupies column 3 (`m[12]`, `m[13]`, `m[14]`).
//!
//! Some texts print pose matrices in the transposed, row-vector layout where
//! the translation appears in the bottom row. Reading such a display
//! row by row yields exactly the flat array used here.
//!
//! All public angles are in degrees.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::MathError;

/// Smallest determinant magnitude accepted by [`Mat4::inverse`].
pub const SINGULAR_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn length(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Unit vector in the same direction. Fails for vectors shorter than 1e-12.
    pub fn normalize(self) -> Result<Vec3, MathError> {
        let len = self.length();
        if len.is_nan() || len < 1e-12 {
            return Err(MathError::ZeroLength);
        }
        Ok(self * (1.0 / len))
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// 4×4 matrix, column-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4 {
    pub m: [f64; 16],
}

impl Default for Mat4 {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl Mat4 {
    #[rustfmt::skip]
    pub const IDENTITY: Mat4 = Mat4 { m: [
        1.0, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 1.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
    ]};

    pub fn identity() -> Self {
        Self::IDENTITY
    }

    pub const fn from_cols_array(m: [f64; 16]) -> Self {
        Self { m }
    }

    /// Builds a matrix from rows in reading order.
    pub fn from_rows(rows: [[f64; 4]; 4]) -> Self {
        let mut m = [0.0; 16];
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m[c * 4 + r] = *v;
            }
        }
        Self { m }
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.m[col * 4 + row]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, v: f64) {
        self.m[col * 4 + row] = v;
    }

    pub fn translation(tx: f64, ty: f64, tz: f64) -> Self {
        let mut out = Self::IDENTITY;
        out.m[12] = tx;
        out.m[13] = ty;
        out.m[14] = tz;
        out
    }

    pub fn scaling(sx: f64, sy: f64, sz: f64) -> Self {
        let mut out = Self::IDENTITY;
        out.m[0] = sx;
        out.m[5] = sy;
        out.m[10] = sz;
        out
    }

    /// Rotation by `angle_deg` about `axis` (right-handed, counter-clockwise
    /// when looking down the axis towards the origin).
    pub fn rotation(angle_deg: f64, axis: Vec3) -> Result<Self, MathError> {
        let a = axis.normalize().map_err(|_| MathError::DegenerateAxis)?;
        let (s, c) = angle_deg.to_radians().sin_cos();
        let t = 1.0 - c;
        Ok(Self::from_rows([
            [
                t * a.x * a.x + c,
                t * a.x * a.y - s * a.z,
                t * a.x * a.z + s * a.y,
                0.0,
            ],
            [
                t * a.x * a.y + s * a.z,
                t * a.y * a.y + c,
                t * a.y * a.z - s * a.x,
                0.0,
            ],
            [
                t * a.x * a.z - s * a.y,
                t * a.y * a.z + s * a.x,
                t * a.z * a.z + c,
                0.0,
            ],
            [0.0, 0.0, 0.0, 1.0],
        ]))
    }

    pub fn rotation_x(angle_deg: f64) -> Self {
        Self::rotation(angle_deg, Vec3::X).expect("unit axis")
    }

    pub fn rotation_y(angle_deg: f64) -> Self {
        Self::rotation(angle_deg, Vec3::Y).expect("unit axis")
    }

    pub fn rotation_z(angle_deg: f64) -> Self {
        Self::rotation(angle_deg, Vec3::Z).expect("unit axis")
    }

    /// Assembles a rigid transform from rotation columns and a translation.
    pub fn from_rotation_translation(cols: [Vec3; 3], t: Vec3) -> Self {
        let mut out = Self::IDENTITY;
        for (c, v) in cols.iter().enumerate() {
            out.set(0, c, v.x);
            out.set(1, c, v.y);
            out.set(2, c, v.z);
        }
        out.m[12] = t.x;
        out.m[13] = t.y;
        out.m[14] = t.z;
        out
    }

    /// `self · rhs`, so `rhs` is applied to points first.
    pub fn multiply(&self, rhs: &Mat4) -> Mat4 {
        let mut out = [0.0; 16];
        for c in 0..4 {
            for r in 0..4 {
                let mut acc = 0.0;
                for k in 0..4 {
                    acc += self.m[k * 4 + r] * rhs.m[c * 4 + k];
                }
                out[c * 4 + r] = acc;
            }
        }
        Mat4 { m: out }
    }

    pub fn transpose(&self) -> Mat4 {
        let mut out = [0.0; 16];
        for r in 0..4 {
            for c in 0..4 {
                out[r * 4 + c] = self.m[c * 4 + r];
            }
        }
        Mat4 { m: out }
    }

    pub fn determinant(&self) -> f64 {
        self.cofactors().1
    }

    /// Adjugate entries (already transposed into inverse position) and the
    /// determinant, by cofactor expansion.
    fn cofactors(&self) -> ([f64; 16], f64) {
        let m = &self.m;
        let mut inv = [0.0; 16];
        inv[0] = m[5] * m[10] * m[15] - m[5] * m[11] * m[14] - m[9] * m[6] * m[15]
            + m[9] * m[7] * m[14]
            + m[13] * m[6] * m[11]
            - m[13] * m[7] * m[10];
        inv[4] = -m[4] * m[10] * m[15] + m[4] * m[11] * m[14] + m[8] * m[6] * m[15]
            - m[8] * m[7] * m[14]
            - m[12] * m[6] * m[11]
            + m[12] * m[7] * m[10];
        inv[8] = m[4] * m[9] * m[15] - m[4] * m[11] * m[13] - m[8] * m[5] * m[15]
            + m[8] * m[7] * m[13]
            + m[12] * m[5] * m[11]
            - m[12] * m[7] * m[9];
        inv[12] = -m[4] * m[9] * m[14] + m[4] * m[10] * m[13] + m[8] * m[5] * m[14]
            - m[8] * m[6] * m[13]
            - m[12] * m[5] * m[10]
            + m[12] * m[6] * m[9];
        inv[1] = -m[1] * m[10] * m[15] + m[1] * m[11] * m[14] + m[9] * m[2] * m[15]
            - m[9] * m[3] * m[14]
            - m[13] * m[2] * m[11]
            + m[13] * m[3] * m[10];
        inv[5] = m[0] * m[10] * m[15] - m[0] * m[11] * m[14] - m[8] * m[2] * m[15]
            + m[8] * m[3] * m[14]
            + m[12] * m[2] * m[11]
            - m[12] * m[3] * m[10];
        inv[9] = -m[0] * m[9] * m[15] + m[0] * m[11] * m[13] + m[8] * m[1] * m[15]
            - m[8] * m[3] * m[13]
            - m[12] * m[1] * m[11]
            + m[12] * m[3] * m[9];
        inv[13] = m[0] * m[9] * m[14] - m[0] * m[10] * m[13] - m[8] * m[1] * m[14]
            + m[8] * m[2] * m[13]
            + m[12] * m[1] * m[10]
            - m[12] * m[2] * m[9];
        inv[2] = m[1] * m[6] * m[15] - m[1] * m[7] * m[14] - m[5] * m[2] * m[15]
            + m[5] * m[3] * m[14]
            + m[13] * m[2] * m[7]
            - m[13] * m[3] * m[6];
        inv[6] = -m[0] * m[6] * m[15] + m[0] * m[7] * m[14] + m[4] * m[2] * m[15]
            - m[4] * m[3] * m[14]
            - m[12] * m[2] * m[7]
            + m[12] * m[3] * m[6];
        inv[10] = m[0] * m[5] * m[15] - m[0] * m[7] * m[13] - m[4] * m[1] * m[15]
            + m[4] * m[3] * m[13]
            + m[12] * m[1] * m[7]
            - m[12] * m[3] * m[5];
        inv[14] = -m[0] * m[5] * m[14] + m[0] * m[6] * m[13] + m[4] * m[1] * m[14]
            - m[4] * m[2] * m[13]
            - m[12] * m[1] * m[6]
            + m[12] * m[2] * m[5];
        inv[3] = -m[1] * m[6] * m[11] + m[1] * m[7] * m[10] + m[5] * m[2] * m[11]
            - m[5] * m[3] * m[10]
            - m[9] * m[2] * m[7]
            + m[9] * m[3] * m[6];
        inv[7] = m[0] * m[6] * m[11] - m[0] * m[7] * m[10] - m[4] * m[2] * m[11]
            + m[4] * m[3] * m[10]
            + m[8] * m[2] * m[7]
            - m[8] * m[3] * m[6];
        inv[11] = -m[0] * m[5] * m[11] + m[0] * m[7] * m[9] + m[4] * m[1] * m[11]
            - m[4] * m[3] * m[9]
            - m[8] * m[1] * m[7]
            + m[8] * m[3] * m[5];
        inv[15] = m[0] * m[5] * m[10] - m[0] * m[6] * m[9] - m[4] * m[1] * m[10]
            + m[4] * m[2] * m[9]
            + m[8] * m[1] * m[6]
            - m[8] * m[2] * m[5];
        let det = m[0] * inv[0] + m[1] * inv[4] + m[2] * inv[8] + m[3] * inv[12];
        (inv, det)
    }

    pub fn inverse(&self) -> Result<Mat4, MathError> {
        let (mut inv, det) = self.cofactors();
        if det.is_nan() || det.abs() <= SINGULAR_EPS {
            return Err(MathError::SingularMatrix { det });
        }
        let k = 1.0 / det;
        for v in inv.iter_mut() {
            *v *= k;
        }
        Ok(Mat4 { m: inv })
    }

    /// `self · T(tx, ty, tz)`: the offset is expressed in the pose's local frame.
    pub fn translate_pose(&self, tx: f64, ty: f64, tz: f64) -> Mat4 {
        // Only the translation column changes.
        let mut out = *self;
        for r in 0..4 {
            out.m[12 + r] =
                self.m[r] * tx + self.m[4 + r] * ty + self.m[8 + r] * tz + self.m[12 + r];
        }
        out
    }

    /// `self · R(angle_deg, axis)`.
    pub fn rotate_pose(&self, angle_deg: f64, axis: Vec3) -> Result<Mat4, MathError> {
        Ok(self.multiply(&Mat4::rotation(angle_deg, axis)?))
    }

    /// `self · S(s, s, s)`.
    pub fn scale_pose(&self, s: f64) -> Result<Mat4, MathError> {
        if s <= 0.0 || !s.is_finite() {
            return Err(MathError::NonPositiveScale(s));
        }
        let mut out = *self;
        for v in out.m[..12].iter_mut() {
            *v *= s;
        }
        Ok(out)
    }

    pub fn transform_point(&self, p: Vec3) -> Vec3 {
        let m = &self.m;
        let w = m[3] * p.x + m[7] * p.y + m[11] * p.z + m[15];
        let v = Vec3::new(
            m[0] * p.x + m[4] * p.y + m[8] * p.z + m[12],
            m[1] * p.x + m[5] * p.y + m[9] * p.z + m[13],
            m[2] * p.x + m[6] * p.y + m[10] * p.z + m[14],
        );
        if w == 1.0 {
            v
        } else {
            v * (1.0 / w)
        }
    }

    pub fn transform_vector(&self, v: Vec3) -> Vec3 {
        let m = &self.m;
        Vec3::new(
            m[0] * v.x + m[4] * v.y + m[8] * v.z,
            m[1] * v.x + m[5] * v.y + m[9] * v.z,
            m[2] * v.x + m[6] * v.y + m[10] * v.z,
        )
    }

    pub fn column(&self, c: usize) -> Vec3 {
        Vec3::new(self.m[c * 4], self.m[c * 4 + 1], self.m[c * 4 + 2])
    }

    pub fn translation_part(&self) -> Vec3 {
        self.column(3)
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().all(|v| v.is_finite())
    }

    /// True when the upper-left 3×3 block is orthonormal with determinant +1
    /// and the bottom row is `(0, 0, 0, 1)`, all within `tol`.
    pub fn is_rigid(&self, tol: f64) -> bool {
        if !self.is_finite() {
            return false;
        }
        let bottom_ok = self.get(3, 0).abs() <= tol
            && self.get(3, 1).abs() <= tol
            && self.get(3, 2).abs() <= tol
            && (self.get(3, 3) - 1.0).abs() <= tol;
        if !bottom_ok {
            return false;
        }
        let cols = [self.column(0), self.column(1), self.column(2)];
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                if (cols[i].dot(cols[j]) - expect).abs() > tol {
                    return false;
                }
            }
        }
        (cols[0].cross(cols[1]).dot(cols[2]) - 1.0).abs() <= tol
    }

    pub fn max_abs_diff(&self, other: &Mat4) -> f64 {
        self.m
            .iter()
            .zip(other.m.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        self.multiply(&rhs)
    }
}
