//! The ten single-objective base functions and their instances.

use std::fmt;

use crate::constants::*;
use crate::error::{Error, Result};
use crate::rng::{derive_seed, gaussian_stream, SeededStream, StreamTag};
use crate::transforms::{
    boundary_penalty, fnv1a, index_fraction, random_rotation, t_asy, t_osz, t_osz_scalar, DiagonalScaling, Matrix,
    RotationMatrix,
};

/// One of the ten base functions, named by its single-objective number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseFunctionId {
    Sphere,
    EllipsoidSeparable,
    AttractiveSector,
    RosenbrockOriginal,
    SharpRidge,
    SumOfDifferentPowers,
    Rastrigin,
    SchafferF7,
    Schwefel,
    Gallagher101,
}

/// The five difficulty classes the base functions are drawn from, two each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctionClass {
    Separable,
    Moderate,
    IllConditioned,
    MultiModal,
    WeaklyStructured,
}

impl FunctionClass {
    pub const ALL: [FunctionClass; 5] = [
        FunctionClass::Separable,
        FunctionClass::Moderate,
        FunctionClass::IllConditioned,
        FunctionClass::MultiModal,
        FunctionClass::WeaklyStructured,
    ];

    pub fn label(self) -> &'static str {
        match self {
            FunctionClass::Separable => "separable",
            FunctionClass::Moderate => "moderate",
            FunctionClass::IllConditioned => "ill-conditioned",
            FunctionClass::MultiModal => "multi-modal",
            FunctionClass::WeaklyStructured => "weakly-structured",
        }
    }
}

impl BaseFunctionId {
    /// Pairing order: ascending single-objective number.
    pub const ALL: [BaseFunctionId; 10] = [
        BaseFunctionId::Sphere,
        BaseFunctionId::EllipsoidSeparable,
        BaseFunctionId::AttractiveSector,
        BaseFunctionId::RosenbrockOriginal,
        BaseFunctionId::SharpRidge,
        BaseFunctionId::SumOfDifferentPowers,
        BaseFunctionId::Rastrigin,
        BaseFunctionId::SchafferF7,
        BaseFunctionId::Schwefel,
        BaseFunctionId::Gallagher101,
    ];

    pub fn from_number(id: u32) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|f| f.number() == id)
            .ok_or(Error::UnknownFunction(id))
    }

    /// 1-based position in the pairing order.
    pub fn from_position(pos: u32) -> Result<Self> {
        if (1..=10).contains(&pos) {
            Ok(Self::ALL[pos as usize - 1])
        } else {
            Err(Error::UnknownFunction(pos))
        }
    }

    pub fn number(self) -> u32 {
        match self {
            BaseFunctionId::Sphere => 1,
            BaseFunctionId::EllipsoidSeparable => 2,
            BaseFunctionId::AttractiveSector => 6,
            BaseFunctionId::RosenbrockOriginal => 8,
            BaseFunctionId::SharpRidge => 13,
            BaseFunctionId::SumOfDifferentPowers => 14,
            BaseFunctionId::Rastrigin => 15,
            BaseFunctionId::SchafferF7 => 17,
            BaseFunctionId::Schwefel => 20,
            BaseFunctionId::Gallagher101 => 21,
        }
    }

    pub fn position(self) -> u32 {
        Self::ALL.iter().position(|&f| f == self).unwrap() as u32 + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            BaseFunctionId::Sphere => "Sphere",
            BaseFunctionId::EllipsoidSeparable => "Ellipsoid separable",
            BaseFunctionId::AttractiveSector => "Attractive sector",
            BaseFunctionId::RosenbrockOriginal => "Rosenbrock original",
            BaseFunctionId::SharpRidge => "Sharp ridge",
            BaseFunctionId::SumOfDifferentPowers => "Sum of different powers",
            BaseFunctionId::Rastrigin => "Rastrigin",
            BaseFunctionId::SchafferF7 => "Schaffer F7, condition 10",
            BaseFunctionId::Schwefel => "Schwefel x*sin(x)",
            BaseFunctionId::Gallagher101 => "Gallagher 101 peaks",
        }
    }

    pub fn class(self) -> FunctionClass {
        FunctionClass::ALL[(self.position() as usize - 1) / 2]
    }

    pub fn properties(self) -> FunctionProperties {
        properties_of(self)
    }
}

impl fmt::Display for BaseFunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{} ({})", self.number(), self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionProperties {
    pub separable: bool,
    pub partially_separable: bool,
    pub unimodal: bool,
    /// Approximate conditioning; `None` where no figure is attached to the
    /// function, infinity where it grows without bound near the optimum.
    pub conditioning: Option<f64>,
    pub asymmetric: bool,
    pub n_local_optima_scale: &'static str,
}

pub fn properties_of(function: BaseFunctionId) -> FunctionProperties {
    use BaseFunctionId::*;
    let p = |separable, partially_separable, unimodal, conditioning, asymmetric, n_local_optima_scale| {
        FunctionProperties { separable, partially_separable, unimodal, conditioning, asymmetric, n_local_optima_scale }
    };
    match function {
        Sphere => p(true, false, true, Some(1.0), false, "1"),
        EllipsoidSeparable => p(true, false, true, Some(1e6), false, "1"),
        AttractiveSector => p(false, false, true, None, true, "1"),
        RosenbrockOriginal => p(false, true, false, None, false, "2"),
        SharpRidge => p(false, false, true, None, false, "1"),
        SumOfDifferentPowers => p(false, false, true, Some(f64::INFINITY), false, "1"),
        Rastrigin => p(false, false, false, Some(10.0), true, "~10^D"),
        SchafferF7 => p(false, false, false, Some(10.0), true, "many"),
        Schwefel => p(false, true, false, None, false, "2^D"),
        Gallagher101 => p(false, false, false, Some(30.0), false, "101"),
    }
}

/// Peaks of a Gallagher instance. Peak 0 is the global one.
#[derive(Debug, Clone, PartialEq)]
pub struct GallagherPeaks {
    pub locations: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    /// Conditioning parameter of each peak.
    pub alphas: Vec<f64>,
    /// Diagonal of each peak's covariance scaling, in rotated coordinates.
    pub scalings: Vec<Vec<f64>>,
    rotated_locations: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
enum Kernel {
    Sphere,
    Ellipsoid { coefficients: Vec<f64> },
    AttractiveSector { map: Matrix },
    Rosenbrock { scale: f64 },
    SharpRidge { map: Matrix },
    DifferentPowers { exponents: Vec<f64> },
    Rastrigin { outer: Matrix },
    Schaffer { outer: Matrix },
    Schwefel { signs: Vec<f64>, scaling: Vec<f64> },
    Gallagher(GallagherPeaks),
}

/// An instantiated base function: optimum, optimal value, rotations and
/// whatever else its evaluation needs.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseInstance {
    function: BaseFunctionId,
    instance: u32,
    dim: usize,
    x_opt: Vec<f64>,
    f_opt: f64,
    rotations: Vec<RotationMatrix>,
    kernel: Kernel,
}

pub fn instantiate_base(function: BaseFunctionId, instance: u32, dim: usize) -> Result<BaseInstance> {
    BaseInstance::new(function, instance, dim)
}

impl BaseInstance {
    pub fn new(function: BaseFunctionId, instance: u32, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension(dim));
        }
        if instance == 0 {
            return Err(Error::InvalidInstance(instance));
        }
        let seed = |tag: StreamTag| derive_seed(function.number() as u64, instance as u64, dim as u64, tag as u64);
        let f_opt = draw_f_opt(seed(StreamTag::OptimumValue));
        let mut loc = SeededStream::new(seed(StreamTag::OptimumLocation));
        let mut uniform_opt = |bound: f64| -> Vec<f64> { (0..dim).map(|_| loc.uniform_in(-bound, bound)).collect() };
        let rotation = |tag| random_rotation(seed(tag), dim);
        let lambda10 = DiagonalScaling::new(10.0, dim);

        use BaseFunctionId::*;
        let (x_opt, rotations, kernel) = match function {
            Sphere => (uniform_opt(OPT_BOUND), vec![], Kernel::Sphere),
            EllipsoidSeparable => {
                let coefficients = (0..dim).map(|i| 10f64.powf(6.0 * index_fraction(i, dim))).collect();
                (uniform_opt(OPT_BOUND), vec![], Kernel::Ellipsoid { coefficients })
            }
            AttractiveSector | SharpRidge => {
                let r = rotation(StreamTag::RotationR)?;
                let q = rotation(StreamTag::RotationQ)?;
                let map = q.matrix().scale_columns(lambda10.entries()).matmul(r.matrix());
                let kernel = if function == AttractiveSector {
                    Kernel::AttractiveSector { map }
                } else {
                    Kernel::SharpRidge { map }
                };
                (uniform_opt(OPT_BOUND), vec![r, q], kernel)
            }
            RosenbrockOriginal => {
                let scale = 1f64.max((dim as f64).sqrt() / 8.0);
                (uniform_opt(ROSENBROCK_OPT_BOUND), vec![], Kernel::Rosenbrock { scale })
            }
            SumOfDifferentPowers => {
                let r = rotation(StreamTag::RotationR)?;
                let exponents = (0..dim).map(|i| 2.0 + 4.0 * index_fraction(i, dim)).collect();
                (uniform_opt(OPT_BOUND), vec![r], Kernel::DifferentPowers { exponents })
            }
            Rastrigin => {
                let r = rotation(StreamTag::RotationR)?;
                let q = rotation(StreamTag::RotationQ)?;
                let outer = r.matrix().scale_columns(lambda10.entries()).matmul(q.matrix());
                (uniform_opt(OPT_BOUND), vec![r, q], Kernel::Rastrigin { outer })
            }
            SchafferF7 => {
                let r = rotation(StreamTag::RotationR)?;
                let q = rotation(StreamTag::RotationQ)?;
                let outer = q.matrix().scale_rows(lambda10.entries());
                (uniform_opt(OPT_BOUND), vec![r, q], Kernel::Schaffer { outer })
            }
            Schwefel => {
                let signs: Vec<f64> =
                    (0..dim).map(|_| if loc.next_f64() < 0.5 { -1.0 } else { 1.0 }).collect();
                let x_opt = signs.iter().map(|s| s * SCHWEFEL_OPT / 2.0).collect();
                let kernel = Kernel::Schwefel { signs, scaling: lambda10.entries().to_vec() };
                (x_opt, vec![], kernel)
            }
            Gallagher101 => {
                let x_opt = uniform_opt(OPT_BOUND);
                let r = rotation(StreamTag::RotationR)?;
                let peaks = gallagher_peaks(&x_opt, &r, seed(StreamTag::PeakLocations), seed(StreamTag::PeakConditioning));
                (x_opt, vec![r], Kernel::Gallagher(peaks))
            }
        };
        Ok(BaseInstance { function, instance, dim, x_opt, f_opt, rotations, kernel })
    }

    pub fn function(&self) -> BaseFunctionId {
        self.function
    }

    pub fn instance_id(&self) -> u32 {
        self.instance
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn x_opt(&self) -> &[f64] {
        &self.x_opt
    }

    pub fn f_opt(&self) -> f64 {
        self.f_opt
    }

    pub fn rotations(&self) -> &[RotationMatrix] {
        &self.rotations
    }

    pub fn gallagher_peaks(&self) -> Option<&GallagherPeaks> {
        match &self.kernel {
            Kernel::Gallagher(p) => Some(p),
            _ => None,
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: x.len() });
        }
        Ok(self.evaluate_unchecked(x))
    }

    /// Evaluation without the length check; `x` must have length `dim`.
    pub fn evaluate_unchecked(&self, x: &[f64]) -> f64 {
        let d = self.dim;
        let shifted: Vec<f64> = x.iter().zip(&self.x_opt).map(|(a, b)| a - b).collect();
        let core = match &self.kernel {
            Kernel::Sphere => shifted.iter().map(|v| v * v).sum(),
            Kernel::Ellipsoid { coefficients } => t_osz(&shifted)
                .iter()
                .zip(coefficients)
                .map(|(z, c)| c * z * z)
                .sum(),
            Kernel::AttractiveSector { map } => {
                let z = map.apply(&shifted);
                let sum: f64 = z
                    .iter()
                    .zip(&self.x_opt)
                    .map(|(&zi, &oi)| {
                        let s = if zi * oi > 0.0 { 100.0 } else { 1.0 };
                        (s * zi).powi(2)
                    })
                    .sum();
                t_osz_scalar(sum).powf(0.9)
            }
            Kernel::Rosenbrock { scale } => {
                let z: Vec<f64> = shifted.iter().map(|v| scale * v + 1.0).collect();
                z.windows(2)
                    .map(|w| 100.0 * (w[0] * w[0] - w[1]).powi(2) + (w[0] - 1.0).powi(2))
                    .sum()
            }
            Kernel::SharpRidge { map } => {
                let z = map.apply(&shifted);
                z[0] * z[0] + 100.0 * z[1..].iter().map(|v| v * v).sum::<f64>().sqrt()
            }
            Kernel::DifferentPowers { exponents } => {
                let z = self.rotations[0].apply(&shifted);
                z.iter().zip(exponents).map(|(v, e)| v.abs().powf(*e)).sum::<f64>().sqrt()
            }
            Kernel::Rastrigin { outer } => {
                let inner = t_asy(&t_osz(&self.rotations[0].apply(&shifted)), 0.2);
                let z = outer.apply(&inner);
                let cos_sum: f64 = z.iter().map(|v| (2.0 * std::f64::consts::PI * v).cos()).sum();
                10.0 * (d as f64 - cos_sum) + z.iter().map(|v| v * v).sum::<f64>()
            }
            Kernel::Schaffer { outer } => {
                let inner = t_asy(&self.rotations[0].apply(&shifted), 0.5);
                let z = outer.apply(&inner);
                let mean = z
                    .windows(2)
                    .map(|w| {
                        let s = (w[0] * w[0] + w[1] * w[1]).sqrt();
                        let rs = s.sqrt();
                        rs + rs * (50.0 * s.powf(0.2)).sin().powi(2)
                    })
                    .sum::<f64>()
                    / (d - 1) as f64;
                mean * mean + 10.0 * boundary_penalty(x)
            }
            Kernel::Schwefel { signs, scaling } => schwefel_core(x, &self.x_opt, signs, scaling),
            Kernel::Gallagher(peaks) => {
                let rx = self.rotations[0].apply(x);
                let best = peaks
                    .rotated_locations
                    .iter()
                    .zip(&peaks.weights)
                    .zip(&peaks.scalings)
                    .map(|((ry, w), c)| {
                        let q: f64 = rx
                            .iter()
                            .zip(ry)
                            .zip(c)
                            .map(|((a, b), ci)| ci * (a - b) * (a - b))
                            .sum();
                        w * (-q / (2.0 * d as f64)).exp()
                    })
                    .fold(f64::NEG_INFINITY, f64::max);
                t_osz_scalar(GALLAGHER_GLOBAL_WEIGHT - best).powi(2) + boundary_penalty(x)
            }
        };
        core + self.f_opt
    }

    /// One-line textual description used for regression pinning.
    pub fn manifest_line(&self) -> String {
        let x_opt: Vec<String> = self.x_opt.iter().map(|v| v.to_string()).collect();
        let mats: Vec<String> = self.rotations.iter().map(|r| format!("{:016x}", r.checksum())).collect();
        let mut line = format!(
            "fn={} K={} D={} f_opt={} x_opt_sum={:016x} x_opt=[{}] rotations=[{}]",
            self.function.number(),
            self.instance,
            self.dim,
            self.f_opt,
            fnv1a(&self.x_opt),
            x_opt.join(","),
            mats.join(",")
        );
        if let Some(p) = self.gallagher_peaks() {
            let flat: Vec<f64> = p.locations.iter().flatten().copied().collect();
            line.push_str(&format!(" peaks={} peaks_sum={:016x}", p.locations.len(), fnv1a(&flat)));
        }
        line
    }
}

fn draw_f_opt(seed: u64) -> f64 {
    let g = gaussian_stream(seed, 2);
    let raw = (100.0 * 100.0 * g[0] / g[1]).round() / 100.0;
    if raw.is_nan() {
        return 0.0;
    }
    raw.clamp(-F_OPT_BOUND, F_OPT_BOUND)
}

fn schwefel_core(x: &[f64], x_opt: &[f64], signs: &[f64], scaling: &[f64]) -> f64 {
    let d = x.len();
    let xhat: Vec<f64> = x.iter().zip(signs).map(|(v, s)| 2.0 * s * v).collect();
    let anchor: Vec<f64> = x_opt.iter().map(|v| 2.0 * v.abs()).collect();
    let mut zhat = xhat.clone();
    for i in 1..d {
        zhat[i] += 0.25 * (xhat[i - 1] - anchor[i - 1]);
    }
    let z: Vec<f64> = (0..d)
        .map(|i| 100.0 * (scaling[i] * (zhat[i] - anchor[i]) + anchor[i]))
        .collect();
    let core = -z.iter().map(|v| v * v.abs().sqrt().sin()).sum::<f64>() / (100.0 * d as f64);
    let scaled: Vec<f64> = z.iter().map(|v| v / 100.0).collect();
    core + SCHWEFEL_OFFSET + 100.0 * boundary_penalty(&scaled)
}

fn permutation(stream: &mut SeededStream, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = stream.index_below(i + 1);
        p.swap(i, j);
    }
    p
}

fn gallagher_peaks(x_opt: &[f64], rotation: &RotationMatrix, loc_seed: u64, cond_seed: u64) -> GallagherPeaks {
    let dim = x_opt.len();
    let n = GALLAGHER_PEAKS;
    let mut loc = SeededStream::new(loc_seed);
    let mut cond = SeededStream::new(cond_seed);

    let mut locations = vec![x_opt.to_vec()];
    for _ in 1..n {
        locations.push((0..dim).map(|_| loc.uniform_in(-GALLAGHER_PEAK_BOUND, GALLAGHER_PEAK_BOUND)).collect());
    }

    let mut weights = vec![GALLAGHER_GLOBAL_WEIGHT];
    weights.extend((0..n - 1).map(|k| 1.1 + 8.0 * k as f64 / (n - 2) as f64));

    // Non-global peaks take alpha = 1000^(2j/99) for a random permutation of j.
    let schedule = permutation(&mut cond, n - 1);
    let mut alphas = vec![GALLAGHER_GLOBAL_ALPHA];
    alphas.extend(schedule.iter().map(|&j| 1000f64.powf(2.0 * j as f64 / (n - 2) as f64)));

    let scalings = alphas
        .iter()
        .map(|&alpha| {
            let base = DiagonalScaling::new(alpha, dim);
            let order = permutation(&mut cond, dim);
            let norm = alpha.powf(0.25);
            order.iter().map(|&k| base.entries()[k] / norm).collect()
        })
        .collect();

    let rotated_locations = locations.iter().map(|y| rotation.apply(y)).collect();
    GallagherPeaks { locations, weights, alphas, scalings, rotated_locations }
}
