//! Positions and pointing directions.
//!
//! Azimuth is measured in the x–y plane from +x towards +y; elevation is
//! measured from the x–y plane towards +z. A ceiling transmitter looking at
//! the floor therefore has elevation −π/2.

use std::f64::consts::FRAC_PI_2;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

pub type Vec3 = Vector3<f64>;

/// Position plus boresight orientation of a transmitter or receiver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    pub position: [f64; 3],
    pub azimuth: f64,
    pub elevation: f64,
}

impl Pose {
    pub fn new(position: [f64; 3], azimuth: f64, elevation: f64) -> Self {
        Self {
            position,
            azimuth,
            elevation,
        }
    }

    pub fn facing_down(position: [f64; 3]) -> Self {
        Self::new(position, 0.0, -FRAC_PI_2)
    }

    pub fn facing_up(position: [f64; 3]) -> Self {
        Self::new(position, 0.0, FRAC_PI_2)
    }

    /// Downward-facing pose whose boresight is tilted by `tilt` away from
    /// nadir, towards azimuth `tilt_azimuth`.
    pub fn tilted_down(position: [f64; 3], tilt: f64, tilt_azimuth: f64) -> Self {
        Self::new(position, tilt_azimuth, -(FRAC_PI_2 - tilt))
    }

    /// Upward-facing pose tilted by `tilt` away from zenith towards
    /// azimuth `tilt_azimuth`.
    pub fn tilted_up(position: [f64; 3], tilt: f64, tilt_azimuth: f64) -> Self {
        Self::new(position, tilt_azimuth, FRAC_PI_2 - tilt)
    }

    pub fn point(&self) -> Vec3 {
        Vec3::from(self.position)
    }

    /// Unit boresight vector.
    pub fn direction(&self) -> Vec3 {
        let (se, ce) = self.elevation.sin_cos();
        let (sa, ca) = self.azimuth.sin_cos();
        Vec3::new(ce * ca, ce * sa, se)
    }

    /// Orthonormal frame (boresight, azimuth axis, elevation axis).
    ///
    /// The two transverse axes are the derivatives of the boresight with
    /// respect to azimuth and elevation, so they stay defined at the poles.
    pub fn frame(&self) -> (Vec3, Vec3, Vec3) {
        let (se, ce) = self.elevation.sin_cos();
        let (sa, ca) = self.azimuth.sin_cos();
        let d = Vec3::new(ce * ca, ce * sa, se);
        let e_az = Vec3::new(-sa, ca, 0.0);
        let e_el = Vec3::new(-se * ca, -se * sa, ce);
        (d, e_az, e_el)
    }

    /// Angular offsets (azimuth, elevation) of `v` from the boresight,
    /// measured in the pose's own frame.
    pub fn local_angles(&self, v: &Vec3) -> (f64, f64) {
        let (d, e_az, e_el) = self.frame();
        let x = v.dot(&d);
        let y = v.dot(&e_az);
        let z = v.dot(&e_el);
        (y.atan2(x), z.atan2(x.hypot(y)))
    }

    /// Right-handed basis of the plane normal to the boresight.
    pub fn plane_basis(&self) -> (Vec3, Vec3) {
        let (_, e_az, e_el) = self.frame();
        (-e_el, e_az)
    }

    /// Same orientation at a different position.
    pub fn moved_to(&self, position: [f64; 3]) -> Self {
        Self { position, ..*self }
    }
}

/// Rotate `v` about the unit `axis` by `angle` (Rodrigues).
pub fn rotate_about(v: &Vec3, axis: &Vec3, angle: f64) -> Vec3 {
    let k = axis.normalize();
    let (s, c) = angle.sin_cos();
    v * c + k.cross(v) * s + k * k.dot(v) * (1.0 - c)
}

/// Azimuth/elevation of a direction vector.
pub fn direction_angles(v: &Vec3) -> (f64, f64) {
    let n = v.norm();
    (v.y.atan2(v.x), (v.z / n).clamp(-1.0, 1.0).asin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn frame_is_orthonormal_everywhere() {
        for &(az, el) in &[(0.0, 0.0), (1.0, -FRAC_PI_2), (2.5, 0.3), (-0.7, FRAC_PI_2)] {
            let (d, a, e) = Pose::new([0.0; 3], az, el).frame();
            for (u, v) in [(d, a), (d, e), (a, e)] {
                assert!(u.dot(&v).abs() < 1e-15);
            }
            for u in [d, a, e] {
                assert_relative_eq!(u.norm(), 1.0, max_relative = 1e-15);
            }
        }
    }

    #[test]
    fn facing_down_points_to_floor() {
        let d = Pose::facing_down([0.0; 3]).direction();
        assert_relative_eq!(d.z, -1.0);
        let t = Pose::tilted_down([0.0; 3], 0.1, 0.0).direction();
        assert_relative_eq!(t.x, 0.1f64.sin(), max_relative = 1e-15);
        assert_relative_eq!(t.z, -0.1f64.cos(), max_relative = 1e-15);
    }

    #[test]
    fn local_angles_zero_on_boresight() {
        let p = Pose::new([0.0; 3], 0.4, -0.2);
        let (a, e) = p.local_angles(&p.direction());
        assert!(a.abs() < 1e-15 && e.abs() < 1e-15);
    }

    #[test]
    fn plane_basis_right_handed() {
        let p = Pose::facing_up([0.0; 3]);
        let (e1, e2) = p.plane_basis();
        assert_relative_eq!(e1.cross(&e2), p.direction(), epsilon = 1e-15);
        assert_relative_eq!(e1, Vec3::x(), epsilon = 1e-15);
    }

    #[test]
    fn rodrigues_quarter_turn() {
        let r = rotate_about(&Vec3::x(), &Vec3::z(), FRAC_PI_2);
        assert_relative_eq!(r, Vec3::y(), epsilon = 1e-15);
    }
}
