//! Image-source ray tracing in a box room.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::antenna::{antenna_gain, HornPattern};
use super::surface::{surface_coefficients, Material};
use crate::error::{Error, Result};
use crate::geometry::{Pose, Vec3};
use crate::units::SPEED_OF_LIGHT;

const FACE_TOLERANCE: f64 = 1e-9;

/// Axis-aligned room [0, Lx] × [0, Ly] × [0, Lz].
///
/// Walls are ordered x = 0, x = Lx, y = 0, y = Ly, z = 0 (floor),
/// z = Lz (ceiling).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoomScene {
    pub dimensions: [f64; 3],
    pub walls: [Material; 6],
    pub scatterers_per_reflection: usize,
    pub scatter_cloud_radius: f64,
    pub max_reflection_order: u8,
}

impl RoomScene {
    /// 3 m cube with plaster walls, second-order reflections and a ring of
    /// eight scatterers 5 cm around each first-order reflection point.
    pub fn default_room() -> Self {
        Self {
            dimensions: [3.0, 3.0, 3.0],
            walls: [Material::plaster(); 6],
            scatterers_per_reflection: 8,
            scatter_cloud_radius: 0.05,
            max_reflection_order: 2,
        }
    }

    pub fn absorbing(dimensions: [f64; 3]) -> Self {
        Self {
            dimensions,
            walls: [Material::absorbing(); 6],
            scatterers_per_reflection: 0,
            scatter_cloud_radius: 0.0,
            max_reflection_order: 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self
            .dimensions
            .iter()
            .any(|d| !(*d > 0.0) || !d.is_finite())
        {
            return Err(Error::domain(
                "RoomScene",
                "dimensions must be finite and > 0",
            ));
        }
        for w in &self.walls {
            w.validate()?;
        }
        if !(self.scatter_cloud_radius >= 0.0) {
            return Err(Error::domain(
                "RoomScene",
                "scatter cloud radius must be >= 0",
            ));
        }
        if self.max_reflection_order > 2 {
            return Err(Error::domain(
                "RoomScene",
                "reflection order must be 0, 1 or 2",
            ));
        }
        Ok(())
    }

    pub fn contains(&self, p: &Vec3) -> bool {
        (0..3).all(|k| p[k] >= -FACE_TOLERANCE && p[k] <= self.dimensions[k] + FACE_TOLERANCE)
    }

    fn face_axis(face: usize) -> usize {
        face / 2
    }

    fn face_coordinate(&self, face: usize) -> f64 {
        if face.is_multiple_of(2) {
            0.0
        } else {
            self.dimensions[face / 2]
        }
    }

    fn mirror(&self, p: &Vec3, face: usize) -> Vec3 {
        let a = Self::face_axis(face);
        let mut q = *p;
        q[a] = 2.0 * self.face_coordinate(face) - p[a];
        q
    }

    /// Point where segment a→b crosses the wall plane, if it lies on the wall.
    fn hit(&self, a: &Vec3, b: &Vec3, face: usize) -> Option<Vec3> {
        let ax = Self::face_axis(face);
        let denom = b[ax] - a[ax];
        if denom == 0.0 {
            return None;
        }
        let t = (self.face_coordinate(face) - a[ax]) / denom;
        if !(t > 0.0 && t < 1.0) {
            return None;
        }
        let mut p = a + (b - a) * t;
        p[ax] = self.face_coordinate(face);
        self.on_face(&p, face).then_some(p)
    }

    fn on_face(&self, p: &Vec3, face: usize) -> bool {
        let ax = Self::face_axis(face);
        (0..3)
            .filter(|&k| k != ax)
            .all(|k| p[k] >= -FACE_TOLERANCE && p[k] <= self.dimensions[k] + FACE_TOLERANCE)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RayKind {
    LoS,
    Ref,
    Sca,
    /// Reserved; no diffraction model is implemented.
    Dif,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ray {
    pub kind: RayKind,
    pub path_length: f64,
    pub delay: f64,
    pub amplitude: Complex64,
    /// Interaction points, in order from transmitter to receiver.
    pub vertices: Vec<Vec3>,
    /// Wall index of each vertex.
    pub faces: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RaySet {
    pub rays: Vec<Ray>,
}

impl RaySet {
    pub fn los(&self) -> Option<&Ray> {
        self.rays.iter().find(|r| r.kind == RayKind::LoS)
    }

    pub fn of_kind(&self, kind: RayKind) -> impl Iterator<Item = &Ray> {
        self.rays.iter().filter(move |r| r.kind == kind)
    }

    pub fn transfer(&self) -> Complex64 {
        self.rays.iter().map(|r| r.amplitude).sum()
    }
}

fn pattern_gain(pose: &Pose, pattern: &HornPattern, towards: &Vec3) -> f64 {
    let (a, e) = pose.local_angles(towards);
    antenna_gain(pattern, a, e)
}

/// Free-space propagation factor c/(4πfℓ)·e^(−κℓ/2)·e^(−j2πfℓ/c).
fn propagation(f: f64, length: f64, kappa: f64) -> Complex64 {
    let mag = SPEED_OF_LIGHT / (4.0 * PI * f * length) * (-0.5 * kappa * length).exp();
    Complex64::from_polar(mag, -2.0 * PI * f * length / SPEED_OF_LIGHT)
}

/// Line-of-sight transfer function.
pub fn los_transfer(
    f: f64,
    tx: &Pose,
    rx: &Pose,
    tx_pattern: &HornPattern,
    rx_pattern: &HornPattern,
    kappa: f64,
) -> Result<Complex64> {
    let link = rx.point() - tx.point();
    let r = link.norm();
    if r == 0.0 {
        return Err(Error::DegenerateGeometry(
            "transmitter and receiver coincide".into(),
        ));
    }
    if !(f > 0.0) {
        return Err(Error::domain("los_transfer", "frequency must be > 0"));
    }
    let g = pattern_gain(tx, tx_pattern, &link) * pattern_gain(rx, rx_pattern, &(-link));
    Ok(propagation(f, r, kappa) * g.sqrt())
}

struct Tracer<'a> {
    scene: &'a RoomScene,
    tx: &'a Pose,
    rx: &'a Pose,
    tx_pattern: &'a HornPattern,
    rx_pattern: &'a HornPattern,
    f: f64,
    kappa: f64,
    los_length: f64,
}

impl Tracer<'_> {
    fn ray(
        &self,
        kind: RayKind,
        vertices: Vec<Vec3>,
        faces: Vec<usize>,
        coefficient: Complex64,
    ) -> Ray {
        let t = self.tx.point();
        let r = self.rx.point();
        let mut length = 0.0;
        let mut prev = t;
        for v in vertices.iter().chain(std::iter::once(&r)) {
            length += (v - prev).norm();
            prev = *v;
        }
        let first = vertices.first().copied().unwrap_or(r);
        let last = vertices.last().copied().unwrap_or(t);
        let g = pattern_gain(self.tx, self.tx_pattern, &(first - t))
            * pattern_gain(self.rx, self.rx_pattern, &(last - r));
        Ray {
            kind,
            path_length: length,
            delay: self.los_length / SPEED_OF_LIGHT + (length - self.los_length) / SPEED_OF_LIGHT,
            amplitude: propagation(self.f, length, self.kappa) * g.sqrt() * coefficient,
            vertices,
            faces,
        }
    }

    fn incidence(&self, from: &Vec3, at: &Vec3, face: usize) -> f64 {
        let u = at - from;
        let ax = RoomScene::face_axis(face);
        (u[ax].abs() / u.norm()).clamp(0.0, 1.0).acos()
    }

    fn coefficients(&self, face: usize, incidence: f64) -> Result<(Complex64, Complex64)> {
        surface_coefficients(
            &self.scene.walls[face],
            self.f,
            incidence.min(PI / 2.0 - 1e-12),
        )
    }

    fn first_order(&self, rays: &mut Vec<Ray>) -> Result<()> {
        let t = self.tx.point();
        let r = self.rx.point();
        for face in 0..6 {
            let image = self.scene.mirror(&t, face);
            let Some(p) = self.scene.hit(&image, &r, face) else {
                continue;
            };
            let theta = self.incidence(&t, &p, face);
            let (refl, scat) = self.coefficients(face, theta)?;
            if refl.norm() > 0.0 {
                rays.push(self.ray(RayKind::Ref, vec![p], vec![face], refl));
            }
            let n = self.scene.scatterers_per_reflection;
            if n > 0 && scat.norm() > 0.0 && self.scene.scatter_cloud_radius > 0.0 {
                let ax = RoomScene::face_axis(face);
                let tangents: Vec<usize> = (0..3).filter(|&k| k != ax).collect();
                let share = scat / (n as f64).sqrt();
                for k in 0..n {
                    let phi = 2.0 * PI * k as f64 / n as f64;
                    let mut s = p;
                    s[tangents[0]] += self.scene.scatter_cloud_radius * phi.cos();
                    s[tangents[1]] += self.scene.scatter_cloud_radius * phi.sin();
                    if self.scene.on_face(&s, face) {
                        rays.push(self.ray(RayKind::Sca, vec![s], vec![face], share));
                    }
                }
            }
        }
        Ok(())
    }

    fn second_order(&self, rays: &mut Vec<Ray>) -> Result<()> {
        let t = self.tx.point();
        let r = self.rx.point();
        for f1 in 0..6 {
            let image1 = self.scene.mirror(&t, f1);
            for f2 in (0..6).filter(|&f2| f2 != f1) {
                let image2 = self.scene.mirror(&image1, f2);
                let Some(p2) = self.scene.hit(&image2, &r, f2) else {
                    continue;
                };
                let Some(p1) = self.scene.hit(&image1, &p2, f1) else {
                    continue;
                };
                let (r1, _) = self.coefficients(f1, self.incidence(&t, &p1, f1))?;
                let (r2, _) = self.coefficients(f2, self.incidence(&p1, &p2, f2))?;
                let c = r1 * r2;
                if c.norm() > 0.0 {
                    rays.push(self.ray(RayKind::Ref, vec![p1, p2], vec![f1, f2], c));
                }
            }
        }
        Ok(())
    }
}

/// Trace LoS, specular (up to the scene's order) and scattered rays and
/// return them with their coherent sum H(f).
#[allow(clippy::too_many_arguments)]
pub fn trace_multiray(
    scene: &RoomScene,
    tx: &Pose,
    rx: &Pose,
    tx_pattern: &HornPattern,
    rx_pattern: &HornPattern,
    f: f64,
    kappa: f64,
) -> Result<(RaySet, Complex64)> {
    scene.validate()?;
    if !(f > 0.0) || !(kappa >= 0.0) {
        return Err(Error::domain("trace_multiray", "need f > 0 and kappa >= 0"));
    }
    for (name, p) in [("transmitter", tx), ("receiver", rx)] {
        if !scene.contains(&p.point()) {
            return Err(Error::DegenerateGeometry(format!(
                "{name} lies outside the room"
            )));
        }
    }
    let los_length = (rx.point() - tx.point()).norm();
    if los_length == 0.0 {
        return Err(Error::DegenerateGeometry(
            "transmitter and receiver coincide".into(),
        ));
    }
    let tracer = Tracer {
        scene,
        tx,
        rx,
        tx_pattern,
        rx_pattern,
        f,
        kappa,
        los_length,
    };
    let mut rays = vec![tracer.ray(RayKind::LoS, vec![], vec![], Complex64::new(1.0, 0.0))];
    if scene.max_reflection_order >= 1 {
        tracer.first_order(&mut rays)?;
    }
    if scene.max_reflection_order >= 2 {
        tracer.second_order(&mut rays)?;
    }
    let set = RaySet { rays };
    let h = set.transfer();
    Ok((set, h))
}

/// Largest deviation from the specular law over a ray's vertices: the
/// outgoing unit direction must equal the incoming one mirrored in the wall.
pub fn specular_residual(tx: &Pose, rx: &Pose, ray: &Ray) -> f64 {
    let mut pts = vec![tx.point()];
    pts.extend(ray.vertices.iter().copied());
    pts.push(rx.point());
    let mut worst: f64 = 0.0;
    for (i, face) in ray.faces.iter().enumerate() {
        let inc = (pts[i + 1] - pts[i]).normalize();
        let out = (pts[i + 2] - pts[i + 1]).normalize();
        let mut mirrored = inc;
        mirrored[RoomScene::face_axis(*face)] *= -1.0;
        worst = worst.max((out - mirrored).norm());
    }
    worst
}
