//! Multi-AP indoor deployments: nearest-AP association, interference-aware
//! SINR, coverage probability and networked consumption factors.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Pose;
use crate::indoor_owc::{
    channel_gain_owc, owc_signal_power, owc_transmitter_power, GaussianBeam, PhotoDetector,
    VcselLiv,
};
use crate::indoor_thz::{
    chain_efficiency, phase_noise_term, received_power, thz_noise_power, trace_multiray,
    HornPattern, RoomScene, ThzChain,
};
use crate::mathkit::{QuadratureSpec, RngStream};
use crate::units::{db_to_linear, BOLTZMANN, ELEMENTARY_CHARGE};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Technology {
    Owc {
        beam: GaussianBeam,
        detector: PhotoDetector,
        liv: VcselLiv,
    },
    Thz {
        /// Used at both ends.
        pattern: HornPattern,
        chain: ThzChain,
        frequency: f64,
        /// Absorption coefficient at the carrier, 1/m.
        kappa: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deployment {
    /// N_t; the deployment has N_t × N_t access points.
    pub grid_side: usize,
    pub room: RoomScene,
    pub ap_height: f64,
    pub technology: Technology,
    /// Transmit power per AP, W.
    pub tx_power: f64,
}

impl Deployment {
    pub fn validate(&self) -> Result<()> {
        if self.grid_side == 0 {
            return Err(Error::domain("Deployment", "grid side must be >= 1"));
        }
        self.room.validate()?;
        if !(self.ap_height > 0.0 && self.ap_height <= self.room.dimensions[2]) {
            return Err(Error::domain(
                "Deployment",
                "AP height must lie in (0, room height]",
            ));
        }
        if !(self.tx_power >= 0.0) || !self.tx_power.is_finite() {
            return Err(Error::domain(
                "Deployment",
                "transmit power must be finite and >= 0",
            ));
        }
        match &self.technology {
            Technology::Owc {
                beam,
                detector,
                liv,
            } => {
                beam.validate()?;
                detector.validate()?;
                liv.validate()
            }
            Technology::Thz {
                pattern,
                chain,
                frequency,
                kappa,
            } => {
                pattern.validate()?;
                chain.validate()?;
                if !(*frequency > 0.0) || !(*kappa >= 0.0) {
                    return Err(Error::domain(
                        "Deployment",
                        "need frequency > 0 and kappa >= 0",
                    ));
                }
                Ok(())
            }
        }
    }

    /// Uniform grid with a half-pitch margin, all APs facing the floor.
    /// AP index is `i·N_t + j` for the i-th column along x and j-th row along y.
    pub fn ap_poses(&self) -> Vec<Pose> {
        let n = self.grid_side;
        let [lx, ly, _] = self.room.dimensions;
        let (px, py) = (lx / n as f64, ly / n as f64);
        (0..n)
            .flat_map(|i| {
                (0..n).map(move |j| {
                    Pose::facing_down([
                        (i as f64 + 0.5) * px,
                        (j as f64 + 0.5) * py,
                        self.ap_height,
                    ])
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UserDrop {
    pub receivers: Vec<Pose>,
}

impl UserDrop {
    /// `count` upward-facing receivers uniform over the room footprint.
    pub fn uniform(room: &RoomScene, height: f64, count: usize, rng: &mut RngStream) -> Self {
        let [lx, ly, _] = room.dimensions;
        let receivers = (0..count)
            .map(|_| Pose::facing_up([rng.uniform_open() * lx, rng.uniform_open() * ly, height]))
            .collect();
        Self { receivers }
    }
}

/// Index of the nearest AP; ties go to the lowest index.
pub fn associate(aps: &[Pose], user: &Pose) -> usize {
    let mut best = (0, f64::INFINITY);
    for (k, ap) in aps.iter().enumerate() {
        let d = (ap.point() - user.point()).norm_squared();
        if d < best.1 {
            best = (k, d);
        }
    }
    best.0
}

/// Per-AP received quantity: optical channel gain for OWC, received
/// electrical power for THz.
fn per_ap_link(
    dep: &Deployment,
    aps: &[Pose],
    user: &Pose,
    spec: &QuadratureSpec,
) -> Result<Vec<f64>> {
    aps.iter()
        .map(|ap| match &dep.technology {
            Technology::Owc { beam, detector, .. } => {
                channel_gain_owc(beam, ap, user, detector, spec)
            }
            Technology::Thz {
                pattern,
                chain,
                frequency,
                kappa,
            } => {
                let (_, h) =
                    trace_multiray(&dep.room, ap, user, pattern, pattern, *frequency, *kappa)?;
                Ok(received_power(dep.tx_power, h.norm_sqr(), chain))
            }
        })
        .collect()
}

fn sinr_from_links(
    dep: &Deployment,
    links: &[f64],
    serving: usize,
    bandwidth: f64,
    temperature: f64,
) -> f64 {
    if dep.tx_power == 0.0 {
        return 0.0;
    }
    let interference: f64 = links
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != serving)
        .map(|(_, v)| v)
        .sum();
    match &dep.technology {
        Technology::Owc { detector, .. } => {
            let r = detector.responsivity;
            let p_sig = owc_signal_power(dep.tx_power);
            let currents = links.iter().map(|h| r * h * dep.tx_power);
            let shot: f64 = currents.clone().sum();
            let rin: f64 = currents.map(|i| i * i).sum();
            let sigma2 = 4.0
                * BOLTZMANN
                * temperature
                * bandwidth
                * db_to_linear(detector.tia_noise_figure_db)
                / detector.load_resistance
                + 2.0 * ELEMENTARY_CHARGE * bandwidth * shot
                + bandwidth * db_to_linear(detector.rin_db_per_hz) * rin;
            let signal = r * r * links[serving].powi(2) * p_sig;
            let interferers: f64 = links
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != serving)
                .map(|(_, h)| r * r * h * h * p_sig)
                .sum();
            signal / (interferers + sigma2)
        }
        Technology::Thz { chain, .. } => {
            let p = links[serving];
            if p <= 0.0 {
                return 0.0;
            }
            let noise = thz_noise_power(bandwidth, temperature, chain.noise_figure_db);
            1.0 / (phase_noise_term(chain.pn_floor, bandwidth) + (interference + noise) / p)
        }
    }
}

/// SINR of `user` served by its nearest AP with all other APs interfering.
pub fn sinr_networked(
    dep: &Deployment,
    user: &Pose,
    bandwidth: f64,
    temperature: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    dep.validate()?;
    let aps = dep.ap_poses();
    let serving = associate(&aps, user);
    let links = per_ap_link(dep, &aps, user, spec)?;
    Ok(sinr_from_links(
        dep,
        &links,
        serving,
        bandwidth,
        temperature,
    ))
}

/// Coverage-probability estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coverage {
    pub probability: f64,
    pub stderr: f64,
}

/// Drop settings for coverage estimation. Drop `k` draws its user from
/// substream `k` of `seed`, so results do not depend on worker count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DropPlan {
    pub drops: usize,
    pub receiver_height: f64,
    pub seed: u64,
}

/// SINR for every drop of a plan, one user per drop.
pub fn drop_sinrs(
    dep: &Deployment,
    plan: &DropPlan,
    bandwidth: f64,
    temperature: f64,
    spec: &QuadratureSpec,
) -> Result<Vec<f64>> {
    dep.validate()?;
    if plan.drops == 0 {
        return Err(Error::domain(
            "coverage_probability",
            "need at least one drop",
        ));
    }
    let aps = dep.ap_poses();
    (0..plan.drops)
        .into_par_iter()
        .map(|k| {
            let mut rng = RngStream::new(plan.seed, k as u64);
            let user = UserDrop::uniform(&dep.room, plan.receiver_height, 1, &mut rng).receivers[0];
            let serving = associate(&aps, &user);
            let links = per_ap_link(dep, &aps, &user, spec)?;
            Ok(sinr_from_links(
                dep,
                &links,
                serving,
                bandwidth,
                temperature,
            ))
        })
        .collect()
}

/// Fraction of drop SINRs strictly above `threshold`.
pub fn coverage_from_sinrs(sinrs: &[f64], threshold: f64) -> Coverage {
    let n = sinrs.len() as f64;
    let p = sinrs.iter().filter(|g| **g > threshold).count() as f64 / n;
    Coverage {
        probability: p,
        stderr: (p * (1.0 - p) / n).sqrt(),
    }
}

/// CP(γ_th) = P(γ > γ_th) over uniformly dropped single users.
pub fn coverage_probability(
    dep: &Deployment,
    threshold: f64,
    plan: &DropPlan,
    bandwidth: f64,
    temperature: f64,
    spec: &QuadratureSpec,
) -> Result<Coverage> {
    let sinrs = drop_sinrs(dep, plan, bandwidth, temperature, spec)?;
    Ok(coverage_from_sinrs(&sinrs, threshold))
}

/// Power bookkeeping for the networked consumption factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkPower {
    /// Per-AP overhead, W.
    pub others_per_ap: f64,
    /// Per-receiver consumption for OWC (TIA), W. THz receivers are charged
    /// the chain's LO DC power instead.
    pub receiver: f64,
}

/// Sum rate over total consumed power of every AP and receiver.
pub fn cf_networked(
    dep: &Deployment,
    users: &UserDrop,
    bandwidth: f64,
    temperature: f64,
    power: &NetworkPower,
    spec: &QuadratureSpec,
) -> Result<f64> {
    dep.validate()?;
    let aps = dep.ap_poses();
    let mut rate = 0.0;
    for user in &users.receivers {
        let serving = associate(&aps, user);
        let links = per_ap_link(dep, &aps, user, spec)?;
        rate += bandwidth
            * (1.0 + sinr_from_links(dep, &links, serving, bandwidth, temperature)).log2();
    }
    let n_ap = aps.len() as f64;
    let n_rx = users.receivers.len() as f64;
    let consumed = match &dep.technology {
        Technology::Owc { liv, .. } => {
            n_ap * (owc_transmitter_power(liv, dep.tx_power)? + power.others_per_ap)
                + n_rx * power.receiver
        }
        Technology::Thz { chain, .. } => {
            let h_tx = chain_efficiency(chain)?;
            n_ap * (dep.tx_power / h_tx + chain.lo_dc_power + power.others_per_ap)
                + n_rx * chain.lo_dc_power
        }
    };
    if !(consumed > 0.0) {
        return Err(Error::domain(
            "cf_networked",
            "total consumed power must be > 0",
        ));
    }
    Ok(rate / consumed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indoor_owc::owc_snr;
    use crate::indoor_thz::{thz_sinr, AbsorptionModel};
    use approx::assert_relative_eq;

    fn thz(grid_side: usize, hpbw_deg: f64, tx_power: f64) -> Deployment {
        Deployment {
            grid_side,
            room: RoomScene::default_room(),
            ap_height: 2.95,
            technology: Technology::Thz {
                pattern: HornPattern::from_beamwidth(hpbw_deg.to_radians()).unwrap(),
                chain: ThzChain::reference(),
                frequency: 350e9,
                kappa: AbsorptionModel::LineModel
                    .coefficient(350e9, 0.5, 296.0, 101_325.0)
                    .unwrap(),
            },
            tx_power,
        }
    }

    fn owc(grid_side: usize, tx_power: f64) -> Deployment {
        let hpbd = 6f64.to_radians();
        Deployment {
            grid_side,
            room: RoomScene::default_room(),
            ap_height: 2.95,
            technology: Technology::Owc {
                beam: GaussianBeam::reference().with_hpbd(hpbd).unwrap(),
                detector: PhotoDetector::reference_for_bandwidth(5e8, hpbd / 2.0).unwrap(),
                liv: VcselLiv::reference(),
            },
            tx_power,
        }
    }

    #[test]
    fn association_rules() {
        let aps = thz(3, 6.0, 1e-3).ap_poses();
        assert_eq!(aps.len(), 9);
        let under = Pose::facing_up([2.5, 0.5, 0.95]);
        assert_eq!(associate(&aps, &under), 6);
        let between = Pose::facing_up([1.0, 1.5, 0.95]);
        assert_eq!(associate(&aps, &between), 1);
        let single = thz(1, 6.0, 1e-3).ap_poses();
        assert_eq!(associate(&single, &between), 0);
    }

    #[test]
    fn single_ap_matches_siso() {
        let spec = QuadratureSpec::default();
        let user = Pose::facing_up([1.5, 1.5, 0.95]);
        let dep = thz(1, 6.0, 40e-6);
        let Technology::Thz {
            pattern,
            chain,
            frequency,
            kappa,
        } = &dep.technology
        else {
            unreachable!()
        };
        let (_, h) = trace_multiray(
            &dep.room,
            &dep.ap_poses()[0],
            &user,
            pattern,
            pattern,
            *frequency,
            *kappa,
        )
        .unwrap();
        let siso = thz_sinr(
            received_power(40e-6, h.norm_sqr(), chain),
            5e8,
            295.0,
            chain,
        );
        assert_relative_eq!(
            sinr_networked(&dep, &user, 5e8, 295.0, &spec).unwrap(),
            siso,
            max_relative = 1e-12
        );

        let dep = owc(1, 1e-3);
        let Technology::Owc { beam, detector, .. } = &dep.technology else {
            unreachable!()
        };
        let siso = owc_snr(
            beam,
            &dep.ap_poses()[0],
            &user,
            detector,
            1e-3,
            5e8,
            295.0,
            &spec,
        )
        .unwrap();
        assert_relative_eq!(
            sinr_networked(&dep, &user, 5e8, 295.0, &spec).unwrap(),
            siso,
            max_relative = 1e-12
        );
    }

    #[test]
    fn interference_never_helps() {
        let spec = QuadratureSpec::default();
        let user = Pose::facing_up([1.1, 1.3, 0.95]);
        for dep in [thz(2, 60.0, 1e-3), owc(2, 1e-3)] {
            let aps = dep.ap_poses();
            let links = per_ap_link(&dep, &aps, &user, &spec).unwrap();
            let serving = associate(&aps, &user);
            let full = sinr_from_links(&dep, &links, serving, 5e8, 295.0);
            let mut quiet = links.clone();
            for (k, v) in quiet.iter_mut().enumerate() {
                if k != serving {
                    *v = 0.0;
                }
            }
            assert!(full <= sinr_from_links(&dep, &quiet, serving, 5e8, 295.0));
        }
    }

    #[test]
    fn co_located_interferer_caps_sinr() {
        let mut dep = thz(1, 6.0, 1.0);
        if let Technology::Thz { chain, .. } = &mut dep.technology {
            chain.pn_floor = 0.0;
        }
        let g = sinr_from_links(&dep, &[1e-6, 1e-6], 0, 5e8, 295.0);
        assert!(g <= 1.0);
    }

    #[test]
    fn coverage_edge_cases() {
        let spec = QuadratureSpec::default();
        let plan = DropPlan {
            drops: 50,
            receiver_height: 0.95,
            seed: 3,
        };
        let off = coverage_probability(&thz(2, 20.0, 0.0), 1e-3, &plan, 5e8, 295.0, &spec).unwrap();
        assert_eq!(off.probability, 0.0);
        let dep = thz(2, 40.0, 1e-2);
        let Technology::Thz { chain, .. } = &dep.technology else {
            unreachable!()
        };
        let above = 1.01 * crate::indoor_thz::pn_ceiling(chain.pn_floor, 5e8);
        assert_eq!(
            coverage_probability(&dep, above, &plan, 5e8, 295.0, &spec)
                .unwrap()
                .probability,
            0.0
        );
        let sinrs = drop_sinrs(&dep, &plan, 5e8, 295.0, &spec).unwrap();
        let mut prev = 1.0;
        for t_db in -20..30 {
            let cp = coverage_from_sinrs(&sinrs, db_to_linear(t_db as f64));
            assert!(cp.probability <= prev);
            assert_relative_eq!(
                cp.stderr,
                (cp.probability * (1.0 - cp.probability) / 50.0).sqrt()
            );
            prev = cp.probability;
        }
    }

    #[test]
    fn cf_networked_reductions() {
        let spec = QuadratureSpec::default();
        let user = UserDrop {
            receivers: vec![Pose::facing_up([1.5, 1.5, 0.95])],
        };
        let power = NetworkPower {
            others_per_ap: 0.1,
            receiver: 0.05,
        };
        assert_eq!(
            cf_networked(&thz(1, 6.0, 0.0), &user, 5e8, 295.0, &power, &spec).unwrap(),
            0.0
        );
        let dep = owc(1, 1e-3);
        let g = sinr_networked(&dep, &user.receivers[0], 5e8, 295.0, &spec).unwrap();
        let Technology::Owc { liv, .. } = &dep.technology else {
            unreachable!()
        };
        let siso = crate::indoor_owc::cf_owc(g, 5e8, liv, 1e-3, 0.05, 0.1).unwrap();
        assert_relative_eq!(
            cf_networked(&dep, &user, 5e8, 295.0, &power, &spec).unwrap(),
            siso,
            max_relative = 1e-12
        );
    }
}
