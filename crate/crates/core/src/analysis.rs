//! Error sweeps, FWHM extraction, the `q_s` sensitivity and reproduction of
//! the FWHM tables.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::cayley_klein::CayleyKlein;
use crate::composite::{
    closed_form_populations, parity_product, parity_propagators, populations_from_1, single_pulse_ck,
};
use crate::error::{Error, Result};
use crate::matrix::ComplexMat;
use crate::propagate::IntegratorConfig;
use crate::pulse::{Assignment, ErrorChannel, ErrorModel, Family, OrderPolicy, PhasePolicy, Pulse, SequenceSpec};
use crate::pulses::{make_case1, make_case2, Case1Kind, Case2Kind};

/// Bisection stops once the bracket is narrower than this.
pub const FWHM_BISECTION_TOL: f64 = 1e-6;

/// Base pulse of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PulseChoice {
    Case1(Case1Kind),
    Case2(Case2Kind),
}

impl PulseChoice {
    pub fn build(&self) -> Result<Pulse<f64>> {
        match *self {
            PulseChoice::Case1(k) => make_case1(k),
            PulseChoice::Case2(k) => make_case2(k),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            PulseChoice::Case1(_) => Family::Case1,
            PulseChoice::Case2(_) => Family::Case2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PulseChoice::Case1(k) => k.name(),
            PulseChoice::Case2(k) => k.name(),
        }
    }
}

/// Which population of the final state is recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    P1,
    P3,
}

impl Observable {
    /// Target of a complete-transfer sequence of `n` pulses: `|3⟩` after an
    /// odd count, back to `|1⟩` after an even one.
    pub fn for_parity(n_pulses: usize) -> Self {
        if n_pulses.is_multiple_of(2) {
            Observable::P1
        } else {
            Observable::P3
        }
    }

    fn pick(&self, pops: [f64; 3]) -> f64 {
        match self {
            Observable::P1 => pops[0],
            Observable::P3 => pops[2],
        }
    }
}

/// Symmetric, odd-sized grid of error values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    half_range: f64,
    points: usize,
}

impl Grid {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || points == 0 {
            return Err(Error::InvalidConfig("grid bounds must be finite and points positive".into()));
        }
        if min != -max || max < 0.0 {
            return Err(Error::InvalidConfig(format!("grid [{min}, {max}] is not symmetric about 0")));
        }
        if points.is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!("grid needs an odd point count to contain 0, got {points}")));
        }
        if points == 1 && max != 0.0 {
            return Err(Error::InvalidConfig("a one-point grid must be 0:0:1".into()));
        }
        if points > 1 && max == 0.0 {
            return Err(Error::InvalidConfig("a zero-width grid must have one point".into()));
        }
        Ok(Self { half_range: max, points })
    }

    /// Defaults: `±0.5 × 2001` for Rabi errors, `±3 × 3001` for detunings.
    pub fn default_for(channel: ErrorChannel) -> Self {
        match channel {
            ErrorChannel::DetuningStatic => Self { half_range: 3.0, points: 3001 },
            _ => Self { half_range: 0.5, points: 2001 },
        }
    }

    pub fn min(&self) -> f64 {
        -self.half_range
    }

    pub fn max(&self) -> f64 {
        self.half_range
    }

    pub fn points(&self) -> usize {
        self.points
    }

    fn center(&self) -> usize {
        self.points / 2
    }

    fn step(&self) -> f64 {
        if self.points == 1 {
            0.0
        } else {
            self.half_range / self.center() as f64
        }
    }

    /// Exactly mirror-symmetric, with `0` at the center index.
    pub fn value(&self, i: usize) -> f64 {
        let c = self.center();
        if i >= c {
            (i - c) as f64 * self.step()
        } else {
            -((c - i) as f64 * self.step())
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.value(i)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub pulse: PulseChoice,
    pub spec: SequenceSpec,
    pub channel: ErrorChannel,
    pub grid: Grid,
    pub observable: Observable,
    pub integrator: IntegratorConfig<f64>,
}

impl SweepConfig {
    /// Default grid for the channel, observable by parity of `N`.
    pub fn new(pulse: PulseChoice, spec: SequenceSpec, channel: ErrorChannel) -> Self {
        Self {
            pulse,
            spec,
            channel,
            grid: Grid::default_for(channel),
            observable: Observable::for_parity(spec.n_pulses()),
            integrator: IntegratorConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match (self.pulse.family(), self.channel) {
            (Family::Case1, ErrorChannel::RabiArm(_)) => {
                Err(Error::WrongFamily("single-arm Rabi errors apply to case2 pulses only"))
            }
            (Family::Case2, ErrorChannel::DetuningStatic) => {
                Err(Error::WrongFamily("static detuning errors apply to case1 pulses only"))
            }
            (Family::Case1, _) if self.spec.order_policy == OrderPolicy::AlternateTimeReversal => {
                Err(Error::WrongFamily("alternating time order applies to case2 pulses only"))
            }
            _ => Ok(()),
        }
    }
}

/// What a profile needs per error value, independent of the pulse count.
#[derive(Debug, Clone, Copy)]
enum Unit {
    Ck(CayleyKlein<f64>),
    Pair([ComplexMat<f64>; 2]),
}

/// Final populations of one sequence family as a function of the error
/// magnitude. The per-error single-pulse propagators are cached, so
/// evaluating several pulse counts costs little more than one.
pub struct Profile {
    pulse: Pulse<f64>,
    spec: SequenceSpec,
    channel: ErrorChannel,
    observable: Observable,
    integrator: IntegratorConfig<f64>,
    units: Mutex<HashMap<u64, Unit>>,
}

impl Profile {
    pub fn new(cfg: &SweepConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            pulse: cfg.pulse.build()?,
            spec: cfg.spec,
            channel: cfg.channel,
            observable: cfg.observable,
            integrator: cfg.integrator,
            units: Mutex::new(HashMap::new()),
        })
    }

    fn unit(&self, x: f64) -> Result<Unit> {
        if let Some(u) = self.units.lock().unwrap().get(&x.to_bits()) {
            return Ok(*u);
        }
        let e = self.channel.with_magnitude(x);
        let u = match self.pulse.family() {
            Family::Case1 => Unit::Ck(single_pulse_ck(&self.pulse, &e, &self.integrator)?),
            Family::Case2 => Unit::Pair(parity_propagators(&self.pulse, &self.spec, &e, &self.integrator)?),
        };
        self.units.lock().unwrap().insert(x.to_bits(), u);
        Ok(u)
    }

    /// Three-level populations `(P1, P2, P3)` after `n_pulses` pulses at
    /// error magnitude `x`.
    ///
    /// Case1 sequences use the closed-form sequence populations of the
    /// single-pulse Cayley-Klein pair; case2 sequences multiply propagators.
    pub fn populations_n(&self, x: f64, n_pulses: usize) -> Result<[f64; 3]> {
        let unit = self.unit(x).map_err(|source| Error::SweepPoint { value: x, source: Box::new(source) })?;
        Ok(match unit {
            Unit::Ck(ck) => closed_form_populations(&ck, n_pulses, self.spec.phase_policy),
            Unit::Pair([u1, u2]) => populations_from_1(&parity_product(&u1, &u2, n_pulses)),
        })
    }

    pub fn populations(&self, x: f64) -> Result<[f64; 3]> {
        self.populations_n(x, self.spec.n_pulses())
    }

    pub fn eval_n(&self, x: f64, n_pulses: usize) -> Result<f64> {
        Ok(self.observable.pick(self.populations_n(x, n_pulses)?))
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.eval_n(x, self.spec.n_pulses())
    }
}

/// Outcome of a half-maximum search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Fwhm {
    Width(f64),
    /// No crossing of half the peak inside the grid on at least one side.
    Absent,
    /// The value at zero error is below `0.5`: the sequence fails without
    /// any error.
    Degenerate {
        peak: f64,
    },
}

impl Fwhm {
    pub fn width(&self) -> Option<f64> {
        match self {
            Fwhm::Width(w) => Some(*w),
            _ => None,
        }
    }
}

impl fmt::Display for Fwhm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fwhm::Width(w) => write!(f, "{w:.6}"),
            Fwhm::Absent => write!(f, "absent (no half-maximum crossing inside the grid)"),
            Fwhm::Degenerate { peak } => write!(f, "degenerate (peak {peak:.6} at zero error)"),
        }
    }
}

/// Memoizing wrapper so grid samples are evaluated once.
struct Memo<F> {
    f: F,
    cache: HashMap<u64, f64>,
}

impl<F: FnMut(f64) -> Result<f64>> Memo<F> {
    fn get(&mut self, x: f64) -> Result<f64> {
        if let Some(v) = self.cache.get(&x.to_bits()) {
            return Ok(*v);
        }
        let v = (self.f)(x)?;
        self.cache.insert(x.to_bits(), v);
        Ok(v)
    }
}

/// FWHM of `f` about zero on `grid`: each innermost crossing of `f(0)/2` is
/// located by an outward scan over the grid and refined by bisection. Only
/// the samples the scan reaches are evaluated.
pub fn fwhm_of_fn(grid: &Grid, f: impl FnMut(f64) -> Result<f64>) -> Result<Fwhm> {
    let mut m = Memo { f, cache: HashMap::new() };
    let peak = m.get(0.0)?;
    if peak < 0.5 {
        return Ok(Fwhm::Degenerate { peak });
    }
    let half = peak / 2.0;
    let c = grid.center();
    let mut sides = [0.0; 2];
    for (side, dir) in [(0usize, 1i64), (1, -1)] {
        let mut inside = 0.0;
        let mut crossing = None;
        for k in 1..=c {
            let i = (c as i64 + dir * k as i64) as usize;
            let x = grid.value(i);
            if m.get(x)? < half {
                crossing = Some(x);
                break;
            }
            inside = x;
        }
        let Some(mut outside) = crossing else {
            return Ok(Fwhm::Absent);
        };
        while (outside - inside).abs() > FWHM_BISECTION_TOL {
            let mid = 0.5 * (inside + outside);
            if m.get(mid)? < half {
                outside = mid;
            } else {
                inside = mid;
            }
        }
        sides[side] = 0.5 * (inside + outside);
    }
    Ok(Fwhm::Width(sides[0] - sides[1]))
}

/// FWHM from samples alone, with linear interpolation at the crossings.
pub fn fwhm_of_samples(values: &[f64], populations: &[f64]) -> Result<Fwhm> {
    if values.len() != populations.len() || values.len().is_multiple_of(2) {
        return Err(Error::InvalidConfig("samples must be paired and odd in number".into()));
    }
    let c = values.len() / 2;
    let peak = populations[c];
    if peak < 0.5 {
        return Ok(Fwhm::Degenerate { peak });
    }
    let half = peak / 2.0;
    let cross = |i: usize, j: usize| {
        values[i] + (half - populations[i]) * (values[j] - values[i]) / (populations[j] - populations[i])
    };
    let right = (c + 1..values.len()).find(|&i| populations[i] < half).map(|i| cross(i - 1, i));
    let left = (0..c).rev().find(|&i| populations[i] < half).map(|i| cross(i + 1, i));
    Ok(match (left, right) {
        (Some(l), Some(r)) => Fwhm::Width(r - l),
        _ => Fwhm::Absent,
    })
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub values: Vec<f64>,
    pub populations: Vec<f64>,
    /// Observable at zero error.
    pub peak: f64,
    pub fwhm: Fwhm,
}

/// Evaluates the observable on every grid point (in parallel, assembled in
/// grid order) and refines the FWHM by bisection on the same profile.
pub fn sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    let profile = Profile::new(cfg)?;
    let values = cfg.grid.values();
    let populations = values.par_iter().map(|&x| profile.eval(x)).collect::<Result<Vec<_>>>()?;
    let peak = populations[cfg.grid.center()];
    let sampled: HashMap<u64, f64> = values.iter().zip(&populations).map(|(x, p)| (x.to_bits(), *p)).collect();
    let fwhm = fwhm_of_fn(&cfg.grid, |x| match sampled.get(&x.to_bits()) {
        Some(p) => Ok(*p),
        None => profile.eval(x),
    })?;
    Ok(SweepResult { values, populations, peak, fwhm })
}

/// FWHM of a sequence without sampling the whole grid.
pub fn fwhm(cfg: &SweepConfig) -> Result<Fwhm> {
    let profile = Profile::new(cfg)?;
    fwhm_of_fn(&cfg.grid, |x| profile.eval(x))
}

/// Default finite-difference step for [`q_sensitivity`].
pub const Q_SENSITIVITY_STEP: f64 = 1e-3;

/// Error sensitivity `q_s = −½·∂²P/∂λ²` at `λ = 0` of a single case1 pulse,
/// with `P` the two-level transition probability.
///
/// Central differences at `h` and `h/2` must agree within 1% (plus a 1e−6
/// absolute floor for near-zero curvature); otherwise `h` is halved, at most
/// four times.
pub fn q_sensitivity(p: &Pulse<f64>, h: f64, cfg: &IntegratorConfig<f64>) -> Result<f64> {
    if p.family() != Family::Case1 {
        return Err(Error::WrongFamily("q_s is defined for case1 pulses"));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidConfig(format!("finite-difference step must be positive, got {h}")));
    }
    let prob = |lambda: f64| single_pulse_ck(p, &ErrorModel::RabiGlobal(lambda), cfg).map(|ck| ck.b.norm_sqr());
    let p0 = prob(0.0)?;
    let q = |h: f64| -> Result<f64> { Ok(-(prob(h)? - 2.0 * p0 + prob(-h)?) / (2.0 * h * h)) };
    let mut h = h;
    let mut coarse = q(h)?;
    for _ in 0..=4 {
        let fine = q(h / 2.0)?;
        if (coarse - fine).abs() <= 0.01 * fine.abs() + 1e-6 {
            return Ok(coarse);
        }
        h /= 2.0;
        coarse = fine;
    }
    Err(Error::Degenerate(format!("q_s finite difference did not settle (last step {h:e})")))
}

/// Absorbs rounding when a value sits exactly on a band edge.
const TOLERANCE_SLACK: f64 = 1e-12;

/// Acceptance band of a table column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    Absolute(f64),
    Relative(f64),
}

impl Tolerance {
    pub fn accepts(&self, computed: f64, reference: f64) -> bool {
        match *self {
            Tolerance::Absolute(t) => (computed - reference).abs() <= t + TOLERANCE_SLACK,
            Tolerance::Relative(t) => (computed - reference).abs() <= t * reference.abs() + TOLERANCE_SLACK,
        }
    }
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::Absolute(t) => write!(f, "±{t}"),
            Tolerance::Relative(t) => write!(f, "±{}%", t * 100.0),
        }
    }
}

/// One column of an FWHM table: a scheme evaluated at three pulse counts.
#[derive(Debug, Clone)]
pub struct TableColumn {
    pub scheme: &'static str,
    pub pulse: PulseChoice,
    pub phase: PhasePolicy,
    pub order: OrderPolicy,
    pub channel: ErrorChannel,
    pub ns: [usize; 3],
    pub reference: [f64; 3],
    pub tolerance: Tolerance,
    pub grid: Grid,
}

impl TableColumn {
    pub fn sweep_config(&self, n: usize) -> Result<SweepConfig> {
        let spec = SequenceSpec::new(n, self.phase, self.order)?;
        Ok(SweepConfig { grid: self.grid, ..SweepConfig::new(self.pulse, spec, self.channel) })
    }
}

/// Grid used for the Rabi-error tables.
pub const TABLE_RABI_GRID: Grid = Grid { half_range: 0.5, points: 201 };
/// Grid used for the detuning table.
pub const TABLE_DETUNING_GRID: Grid = Grid { half_range: 3.0, points: 601 };

pub fn table_columns(id: u8) -> Result<Vec<TableColumn>> {
    use PhasePolicy::{Alternating as Alt, Same};
    let odd = [5, 7, 9];
    let even = [4, 6, 8];
    let col = |scheme, pulse, phase, order, channel, ns, reference, tolerance, grid| TableColumn {
        scheme,
        pulse,
        phase,
        order,
        channel,
        ns,
        reference,
        tolerance,
        grid,
    };
    let fixed = OrderPolicy::Fixed;
    let reversed = OrderPolicy::AlternateTimeReversal;
    let rabi = ErrorChannel::RabiGlobal;
    let det = ErrorChannel::DetuningStatic;
    let alt_arm = ErrorChannel::RabiArm(Assignment::AlternatingStartS);
    let c1 = PulseChoice::Case1;
    let c2 = PulseChoice::Case2;
    let (abs, rel) = (Tolerance::Absolute, Tolerance::Relative);
    let (rg, dg) = (TABLE_RABI_GRID, TABLE_DETUNING_GRID);
    Ok(match id {
        1 => vec![
            col("pi-S", c1(Case1Kind::Pi), Same, fixed, rabi, odd, [0.146, 0.104, 0.082], abs(0.002), rg),
            col(
                "Gaussian-S",
                c1(Case1Kind::ChirpedGaussian),
                Same,
                fixed,
                rabi,
                odd,
                [0.153, 0.109, 0.084],
                rel(0.10),
                rg,
            ),
            col("AE-S", c1(Case1Kind::AllenEberly), Same, fixed, rabi, odd, [0.233, 0.162, 0.123], rel(0.10), rg),
            col("STA-S", c1(Case1Kind::Sta { n: 0.5 }), Same, fixed, rabi, odd, [0.165, 0.117, 0.091], rel(0.10), rg),
        ],
        2 => vec![
            col("Flat-pi-A", c1(Case1Kind::FlatPi), Alt, fixed, det, odd, [0.72, 0.52, 0.40], abs(0.02), dg),
            col("Flat-pi-S", c1(Case1Kind::FlatPi), Same, fixed, det, odd, [2.21, 1.91, 1.71], abs(0.02), dg),
            col("Gaussian-A", c1(Case1Kind::ResonantGaussian), Alt, fixed, det, odd, [0.32, 0.22, 0.17], rel(0.10), dg),
            col(
                "Gaussian-S",
                c1(Case1Kind::ResonantGaussian),
                Same,
                fixed,
                det,
                odd,
                [0.68, 0.58, 0.52],
                rel(0.15),
                dg,
            ),
        ],
        3 => vec![
            col(
                "CDS-SF",
                c2(Case2Kind::Cds),
                Same,
                fixed,
                ErrorChannel::RabiArm(Assignment::FixedS),
                even,
                [0.369, 0.225, 0.184],
                abs(0.01),
                rg,
            ),
            col("CDS-AA", c2(Case2Kind::Cds), Alt, fixed, alt_arm, even, [0.406, 0.264, 0.198], abs(0.01), rg),
            col("CDS-SA", c2(Case2Kind::Cds), Same, fixed, alt_arm, even, [0.267, 0.178, 0.184], abs(0.01), rg),
            col(
                "Gaussian-AA",
                c2(Case2Kind::StirapGaussian),
                Alt,
                reversed,
                alt_arm,
                even,
                [0.206, 0.137, 0.103],
                rel(0.10),
                rg,
            ),
            col(
                "sech-AA",
                c2(Case2Kind::StirapSech),
                Alt,
                reversed,
                alt_arm,
                even,
                [0.120, 0.080, 0.060],
                rel(0.10),
                rg,
            ),
            col("sin-AA", c2(Case2Kind::StirapSin), Alt, reversed, alt_arm, even, [0.561, 0.375, 0.282], rel(0.10), rg),
            col(
                "sin2-AA",
                c2(Case2Kind::StirapSin2),
                Alt,
                reversed,
                alt_arm,
                even,
                [0.720, 0.482, 0.362],
                rel(0.10),
                rg,
            ),
        ],
        other => return Err(Error::InvalidConfig(format!("no table {other}; expected 1, 2 or 3"))),
    })
}

#[derive(Debug, Clone)]
pub struct TableCell {
    pub scheme: &'static str,
    pub n: usize,
    pub fwhm: Fwhm,
    pub reference: f64,
    pub tolerance: Tolerance,
}

impl TableCell {
    pub fn computed(&self) -> Option<f64> {
        self.fwhm.width()
    }

    pub fn abs_dev(&self) -> Option<f64> {
        self.computed().map(|c| (c - self.reference).abs())
    }

    pub fn rel_dev(&self) -> Option<f64> {
        self.abs_dev().map(|d| d / self.reference.abs())
    }

    pub fn passes(&self) -> bool {
        self.computed().is_some_and(|c| self.tolerance.accepts(c, self.reference))
    }
}

/// Computes every cell of table `id`, in column order. Columns run in
/// parallel; the pulse counts of a column share one profile.
pub fn reproduce_table(id: u8, integrator: &IntegratorConfig<f64>) -> Result<Vec<TableCell>> {
    let columns = table_columns(id)?;
    let per_column = columns
        .par_iter()
        .map(|c| {
            let cfg = SweepConfig { integrator: *integrator, ..c.sweep_config(c.ns[0])? };
            let profile = Profile::new(&cfg)?;
            (0..3)
                .map(|k| {
                    let observable = Observable::for_parity(c.ns[k]);
                    let f = fwhm_of_fn(&c.grid, |x| Ok(observable.pick(profile.populations_n(x, c.ns[k])?)))?;
                    Ok(TableCell {
                        scheme: c.scheme,
                        n: c.ns[k],
                        fwhm: f,
                        reference: c.reference[k],
                        tolerance: c.tolerance,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_column.into_iter().flatten().collect())
}
