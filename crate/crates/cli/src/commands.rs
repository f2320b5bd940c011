use crate::output::{floats, rat, rats, to_json, write_atomic, F, SCHEMA};
use crate::{Command, Format, OutputArgs};
use clap::ValueEnum;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use verlinde_kit::affine::alcove_points;
use verlinde_kit::dirac::{dirac_bundle, orbit_scan, scan_grid, thom_deformation, DiracReport};
use verlinde_kit::frame::OrthonormalFrame;
use verlinde_kit::kac::{character, kac_denominator, kac_numerator, TorusElement};
use verlinde_kit::kostant::kostant_cohomology;
use verlinde_kit::spectral::{
    circle_flow, torus_class_census, torus_flow, torus_kernel_points, FlowRecord, TorusTwisting,
};
use verlinde_kit::twisted::{build_twisted_datum, twisted_alcove_points};
use verlinde_kit::verlinde::{fuse, fusion_table, s_matrix, verify_fusion};
use verlinde_kit::{build_root_datum, AlgebraSpec, Error, RootDatum, Weight, Q};

/// Tolerance for `dirac-check` residuals.
const DIRAC_TOL: f64 = 1e-8;
/// Orbit-distance threshold used by `orbit-scan`.
const ORBIT_TOL: f64 = 1e-6;

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numeric(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) | CliError::Numeric(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Numeric(_) => CliError::Numeric(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn parse_int_list(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("not an integer: {t:?}")))
        .collect()
}

pub fn parse_rational(s: &str) -> Result<Q, String> {
    s.trim().parse::<Q>().map_err(|_| format!("not a rational: {s:?}"))
}

fn parse_kappa(s: &str) -> CliResult<Vec<Vec<i64>>> {
    s.split(';')
        .map(|row| parse_int_list(row).map_err(CliError::Validation))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesPart {
    Numerator,
    Denominator,
    Character,
}

fn datum(algebra: &str) -> CliResult<RootDatum> {
    let spec: AlgebraSpec = algebra.parse()?;
    Ok(build_root_datum(spec)?)
}

fn check_level(k: i64) -> CliResult<()> {
    if k < 0 {
        return Err(CliError::Validation(format!("level must be nonnegative, got {k}")));
    }
    Ok(())
}

fn weight_key(w: &Weight) -> String {
    w.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

struct Rendered {
    json: String,
    csv: Option<String>,
    /// Set when the output records a failed numeric invariant.
    failure: Option<String>,
}

impl Rendered {
    fn json<T: Serialize>(value: &T) -> Self {
        Rendered {
            json: to_json(value),
            csv: None,
            failure: None,
        }
    }

    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    fn failing_if(mut self, cond: bool, msg: impl FnOnce() -> String) -> Self {
        if cond {
            self.failure = Some(msg());
        }
        self
    }
}

fn emit(r: Rendered, out: &OutputArgs, command: &str) -> CliResult<()> {
    let text = match out.format {
        Format::Json => r.json,
        Format::Csv => r
            .csv
            .ok_or_else(|| CliError::Validation(format!("csv output is not available for {command}")))?,
    };
    match &out.output {
        Some(path) => write_atomic(path, &text).map_err(CliError::Io)?,
        None => print!("{text}"),
    }
    match r.failure {
        Some(m) => Err(CliError::Numeric(m)),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct Header<'a> {
    schema: &'static str,
    command: &'a str,
}

fn header(command: &str) -> Header<'_> {
    Header {
        schema: SCHEMA,
        command,
    }
}

fn weight_rows(ws: &[Weight]) -> String {
    let mut s = String::new();
    for w in ws {
        let _ = writeln!(s, "{}", weight_key(w));
    }
    s
}

fn cmd_alcove(algebra: &str, level: i64) -> CliResult<Rendered> {
    check_level(level)?;
    let d = datum(algebra)?;
    let pts = alcove_points(&d, level);
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        header: Header<'a>,
        algebra: String,
        level: i64,
        count: usize,
        weights: Vec<Vec<i64>>,
    }
    let csv = weight_rows(&pts);
    Ok(Rendered::json(&Out {
        header: header("alcove"),
        algebra: d.spec.to_string(),
        level,
        count: pts.len(),
        weights: pts.into_iter().map(|w| w.0).collect(),
    })
    .with_csv(csv))
}

fn cmd_twisted_alcove(algebra: &str, level: i64, order: usize) -> CliResult<Rendered> {
    check_level(level)?;
    let spec: AlgebraSpec = algebra.parse()?;
    let tw = build_twisted_datum(spec, order)?;
    let pts = twisted_alcove_points(&tw, level);
    #[derive(Serialize)]
    struct Row {
        weight: Vec<i64>,
        in_root_lattice: bool,
    }
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        header: Header<'a>,
        algebra: String,
        order: usize,
        level: i64,
        invariant_algebra: String,
        a0: i64,
        count: usize,
        weights: Vec<Row>,
    }
    let mut csv = String::new();
    for p in &pts {
        let _ = writeln!(csv, "{},{}", weight_key(&p.coords), p.in_root_lattice);
    }
    Ok(Rendered::json(&Out {
        header: header("twisted-alcove"),
        algebra: spec.to_string(),
        order,
        level,
        invariant_algebra: tw.invariant.to_string(),
        a0: tw.a0,
        count: pts.len(),
        weights: pts
            .into_iter()
            .map(|p| Row {
                weight: p.coords.0,
                in_root_lattice: p.in_root_lattice,
            })
            .collect(),
    })
    .with_csv(csv))
}

fn cmd_fuse(algebra: &str, level: i64, left: Vec<i64>, right: Vec<i64>) -> CliResult<Rendered> {
    check_level(level)?;
    let d = datum(algebra)?;
    let prod = fuse(&d, level, &Weight(left.clone()), &Weight(right.clone()))?;
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        header: Header<'a>,
        algebra: String,
        level: i64,
        left: Vec<i64>,
        right: Vec<i64>,
        product: BTreeMap<String, u64>,
    }
    let mut csv = String::new();
    for (w, n) in &prod {
        let _ = writeln!(csv, "{},{}", weight_key(w), n);
    }
    Ok(Rendered::json(&Out {
        header: header("fuse"),
        algebra: d.spec.to_string(),
        level,
        left,
        right,
        product: prod.iter().map(|(w, n)| (weight_key(w), *n)).collect(),
    })
    .with_csv(csv))
}

fn cmd_fusion_table(algebra: &str, level: i64) -> CliResult<Rendered> {
    check_level(level)?;
    let d = datum(algebra)?;
    let t = fusion_table(&d, level)?;
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        header: Header<'a>,
        algebra: String,
        level: i64,
        basis: Vec<Vec<i64>>,
        /// `[i, j, m, N_{ij}^m]`, nonzero entries only.
        triples: Vec<[u64; 4]>,
    }
    let triples: Vec<[u64; 4]> = t.n.iter().map(|(&(i, j, m), &n)| [i as u64, j as u64, m as u64, n]).collect();
    let mut csv = String::from("i,j,m,n\n");
    for r in &triples {
        let _ = writeln!(csv, "{},{},{},{}", r[0], r[1], r[2], r[3]);
    }
    Ok(Rendered::json(&Out {
        header: header("fusion-table"),
        algebra: d.spec.to_string(),
        level,
        basis: t.basis.iter().map(|w| w.0.clone()).collect(),
        triples,
    })
    .with_csv(csv))
}

fn cmd_verify_fusion(algebra: &str, level: i64) -> CliResult<Rendered> {
    check_level(level)?;
    let d = datum(algebra)?;
    let r = verify_fusion(&d, level)?;
    #[derive(Serialize)]
    struct Mismatch {
        i: usize,
        j: usize,
        m: usize,
        kac_walton: u64,
        verlinde: i64,
    }
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        header: Header<'a>,
        algebra: String,
        level: i64,
        rank: usize,
        mismatch_count: usize,
        max_rounding_residual: F,
        mismatches: Vec<Mismatch>,
    }
    eprintln!("{} mismatches", r.mismatches.len());
    let n = r.mismatches.len();
    Ok(Rendered::json(&Out {
        header: header("verify-fusion"),
        algebra: d.spec.to_string(),
        level,
        rank: r.rank,
        mismatch_count: n,
        max_rounding_residual: F(r.max_rounding_residual),
        mismatches: r
            .mismatches
            .into_iter()
            .map(|m| Mismatch {
                i: m.i,
                j: m.j,
                m: m.m,
                kac_walton: m.kac_walton,
                verlinde: m.verlinde,
            })
            .collect(),
    })
    .failing_if(n > 0, || format!("{n} fusion coefficients disagree with the Verlinde formula")))
}

fn cmd_smatrix(algebra: &str, level: i64) -> CliResult<Rendered> {
    check_level(level)?;
    let d = datum(algebra)?;
    let s = s_matrix(&d, level)?;
    let rep = s.report();
    let n = s.basis.len();
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        header: Header<'a>,
        algebra: String,
        level: i64,
        shifted_level: i64,
        basis: Vec<Vec<i64>>,
        /// `entries[i][j] = [re, im]`.
        entries: Vec<Vec<[F; 2]>>,
        unitarity_residual: F,
        symmetry_residual: F,
    }
    let mut csv = String::from("i,j,re,im\n");
    for i in 0..n {
        for j in 0..n {
            let z = s.entries[(i, j)];
            let _ = writeln!(csv, "{i},{j},{:.12e},{:.12e}", z.re, z.im);
        }
    }
    Ok(Rendered::json(&Out {
        header: header("smatrix"),
        algebra: d.spec.to_string(),
        level,
        shifted_level: s.k_dual,
        basis: s.basis.iter().map(|w| w.0.clone()).collect(),
        entries: (0..n)
            .map(|i| (0..n).map(|j| [F(s.entries[(i, j)].re), F(s.entries[(i, j)].im)]).collect())
            .collect(),
        unitarity_residual: F(rep.unitarity),
        symmetry_residual: F(rep.symmetry),
    })
    .with_csv(csv)
    .failing_if(rep.unitarity > 1e-9 || rep.symmetry > 1e-9, || "S-matrix is not unitary and symmetric".into()))
}

fn cmd_char(algebra: &str, level: i64, weight: Vec<i64>, cutoff: i64, angles: Option<Vec<Q>>, part: SeriesPart) -> CliResult<Rendered> {
    check_level(level)?;
    if cutoff < 0 {
        return Err(CliError::Validation(format!("cutoff must be nonnegative, got {cutoff}")));
    }
    let d = datum(algebra)?;
    let g = match angles {
        Some(a) => TorusElement::new(a),
        None => TorusElement::identity(d.rank()),
    };
    let lam = Weight(weight.clone());
    let series = match part {
        SeriesPart::Numerator => kac_numerator(&d, level, &lam, &g, cutoff)?,
        SeriesPart::Denominator => kac_denominator(&d, &g, cutoff)?,
        SeriesPart::Character => character(&d, level, &lam, &g, cutoff)?,
    };
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        header: Header<'a>,
        algebra: String,
        level: i64,
        weight: Vec<i64>,
        angles: Vec<String>,
        part: &'static str,
        base_exponent: String,
        cutoff: String,
        /// `[exponent_num, exponent_den, re, im]`.
        terms: Vec<(i64, i64, F, F)>,
    }
    let rows = series.rows();
    let mut csv = String::from("exponent_num,exponent_den,re,im\n");
    for r in &rows {
        let _ = writeln!(csv, "{},{},{:.12e},{:.12e}", r.0, r.1, r.2, r.3);
    }
    Ok(Rendered::json(&Out {
        header: header("char"),
        algebra: d.spec.to_string(),
        level,
        weight,
        angles: rats(&g.angles),
        part: match part {
            SeriesPart::Numerator => "numerator",
            SeriesPart::Denominator => "denominator",
            SeriesPart::Character => "character",
        },
        base_exponent: rat(&series.base_exponent),
        cutoff: rat(&series.cutoff),
        terms: rows.into_iter().map(|r| (r.0, r.1, F(r.2), F(r.3))).collect(),
    })
    .with_csv(csv))
}

fn bundle_for(algebra: &str, weight: &[i64]) -> CliResult<verlinde_kit::dirac::DiracBundle> {
    let d = datum(algebra)?;
    let fr = OrthonormalFrame::new(&d)?;
    Ok(dirac_bundle(&fr, &Weight(weight.to_vec()))?)
}

fn cmd_dirac_check(algebra: &str, weight: Vec<i64>) -> CliResult<Rendered> {
    let b = bundle_for(algebra, &weight)?;
    let r: DiracReport = b.report();
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        header: Header<'a>,
        algebra: String,
        weight: Vec<i64>,
        bundle_dim: usize,
        d_squared_eigenvalue: F,
        max_residual: F,
        anticommutator_psi: F,
        commutator_t: F,
        d_squared: F,
        skew_adjointness: F,
        oddness: F,
        t_bracket: F,
    }
    let max = r.max_residual();
    Ok(Rendered::json(&Out {
        header: header("dirac-check"),
        algebra: b.frame.datum.spec.to_string(),
        weight,
        bundle_dim: b.dim(),
        d_squared_eigenvalue: F(r.expected_d_squared),
        max_residual: F(max),
        anticommutator_psi: F(r.d_psi_minus_2t),
        commutator_t: F(r.d_t),
        d_squared: F(r.d_squared),
        skew_adjointness: F(r.skew),
        oddness: F(r.odd),
        t_bracket: F(r.t_bracket),
    })
    .failing_if(max > DIRAC_TOL, || format!("Dirac residual {max:e} exceeds {DIRAC_TOL:e}")))
}

fn cmd_orbit_scan(algebra: &str, weight: Vec<i64>, samples: usize, seed: u64) -> CliResult<Rendered> {
    if samples == 0 {
        return Err(CliError::Validation("samples must be positive".into()));
    }
    let b = bundle_for(algebra, &weight)?;
    let scan = orbit_scan(&b, &scan_grid(&b, samples, seed))?;
    let mism = scan.mismatches(ORBIT_TOL);
    #[derive(Serialize)]
    struct Sample {
        mu: Vec<F>,
        min_singular: F,
        kernel_dim: usize,
        orbit_distance: F,
    }
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        header: Header<'a>,
        algebra: String,
        weight: Vec<i64>,
        seed: u64,
        orbit_radius: F,
        kernel_samples: usize,
        mismatch_count: usize,
        samples: Vec<Sample>,
    }
    let mut csv = String::from("index,min_singular,kernel_dim,orbit_distance\n");
    for (i, s) in scan.samples.iter().enumerate() {
        let _ = writeln!(csv, "{i},{:.12e},{},{:.12e}", s.min_singular, s.kernel_dim, s.orbit_distance);
    }
    let n = mism.len();
    Ok(Rendered::json(&Out {
        header: header("orbit-scan"),
        algebra: b.frame.datum.spec.to_string(),
        weight,
        seed,
        orbit_radius: F(scan.orbit_radius),
        kernel_samples: scan.samples.iter().filter(|s| s.kernel_dim > 0).count(),
        mismatch_count: n,
        samples: scan
            .samples
            .iter()
            .map(|s| Sample {
                mu: floats(&s.mu),
                min_singular: F(s.min_singular),
                kernel_dim: s.kernel_dim,
                orbit_distance: F(s.orbit_distance),
            })
            .collect(),
    })
    .with_csv(csv)
    .failing_if(n > 0, || format!("{n} samples where kernel and orbit membership disagree")))
}

fn cmd_thom(algebra: &str, weight: Vec<i64>, scale: f64, steps: usize) -> CliResult<Rendered> {
    if !scale.is_finite() {
        return Err(CliError::Validation("scale must be finite".into()));
    }
    let b = bundle_for(algebra, &weight)?;
    let mu: Vec<f64> = b.weight_to_frame(&b.lambda_rho).iter().map(|x| x * scale).collect();
    let r = thom_deformation(&b, &mu, steps);
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        header: Header<'a>,
        algebra: String,
        weight: Vec<i64>,
        scale: F,
        invertible: bool,
        epsilons: Vec<F>,
        min_singular: Vec<F>,
    }
    let mut csv = String::from("epsilon,min_singular\n");
    for (e, s) in r.epsilons.iter().zip(&r.min_singular) {
        let _ = writeln!(csv, "{e:.12e},{s:.12e}");
    }
    Ok(Rendered::json(&Out {
        header: header("thom"),
        algebra: b.frame.datum.spec.to_string(),
        weight,
        scale: F(scale),
        invertible: r.invertible,
        epsilons: floats(&r.epsilons),
        min_singular: floats(&r.min_singular),
    })
    .with_csv(csv))
}

fn cmd_kostant(algebra: &str, weight: Vec<i64>) -> CliResult<Rendered> {
    let d = datum(algebra)?;
    let fr = OrthonormalFrame::new(&d)?;
    let r = kostant_cohomology(&fr, &Weight(weight.clone()))?;
    #[derive(Serialize)]
    struct Class {
        degree: usize,
        weight: Vec<String>,
    }
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        header: Header<'a>,
        algebra: String,
        weight: Vec<i64>,
        degree_dims: Vec<usize>,
        harmonic_weights: Vec<Class>,
        expected_weights: Vec<Class>,
        matches_expectation: bool,
        weight_residual: F,
        d_squared: F,
    }
    let classes = |v: &[(usize, verlinde_kit::QVec)]| -> Vec<Class> {
        v.iter()
            .map(|(deg, w)| Class {
                degree: *deg,
                weight: rats(w),
            })
            .collect()
    };
    let ok = r.matches_expectation();
    Ok(Rendered::json(&Out {
        header: header("kostant"),
        algebra: d.spec.to_string(),
        weight,
        degree_dims: r.degree_dims.clone(),
        harmonic_weights: classes(&r.harmonic_weights),
        expected_weights: classes(&r.expected_weights),
        matches_expectation: ok,
        weight_residual: F(r.weight_residual),
        d_squared: F(r.d_squared),
    })
    .failing_if(!ok, || "harmonic weights differ from w(−λ−ρ)+ρ".into()))
}

#[derive(Serialize)]
struct FlowOut {
    path_start: F,
    path_end: F,
    net_flow: i64,
    crossings: Vec<(F, i8)>,
}

fn flow_out(r: &FlowRecord) -> FlowOut {
    FlowOut {
        path_start: F(r.path[0]),
        path_end: F(*r.path.last().unwrap()),
        net_flow: r.net_flow,
        crossings: r.crossings.iter().map(|c| (F(c.0), c.1)).collect(),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_spectral_flow(
    rank: Option<usize>,
    kappa: Option<String>,
    lambda: i64,
    from: f64,
    to: f64,
    samples: usize,
    modes: i64,
) -> CliResult<Rendered> {
    let Some(kappa) = kappa else {
        if rank.is_some() {
            return Err(CliError::Validation("--rank requires --kappa".into()));
        }
        let r = circle_flow(from, to, samples, modes)?;
        #[derive(Serialize)]
        struct Out<'a> {
            #[serde(flatten)]
            header: Header<'a>,
            model: &'static str,
            modes: i64,
            flow: FlowOut,
        }
        return Ok(Rendered::json(&Out {
            header: header("spectral-flow"),
            model: "circle",
            modes,
            flow: flow_out(&r),
        })
        .with_csv(r.to_csv()));
    };
    let k = parse_kappa(&kappa)?;
    if let Some(r) = rank {
        if k.len() != r || k.iter().any(|row| row.len() != r) {
            return Err(CliError::Validation(format!("kappa must be {r}x{r}")));
        }
    }
    let tw = TorusTwisting::new(k)?;
    let census = torus_class_census(&tw);
    let kernel = torus_kernel_points(&tw, modes);
    let flow = if tw.rank == 1 {
        Some(torus_flow(&tw, lambda, from, to, samples, modes)?)
    } else {
        None
    };
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        header: Header<'a>,
        model: &'static str,
        rank: usize,
        kappa: Vec<Vec<i64>>,
        modes: i64,
        census: u64,
        elementary_divisors: Vec<i64>,
        kernel_points: Vec<Vec<String>>,
        kernel_classes: usize,
        lambda: i64,
        flow: Option<FlowOut>,
    }
    let csv = flow.as_ref().map(|f| f.to_csv());
    let mut r = Rendered::json(&Out {
        header: header("spectral-flow"),
        model: "torus",
        rank: tw.rank,
        kappa: tw.kappa.clone(),
        modes,
        census,
        elementary_divisors: tw.elementary_divisors().to_vec(),
        kernel_points: kernel.points.iter().map(|p| rats(p)).collect(),
        kernel_classes: kernel.classes,
        lambda,
        flow: flow.as_ref().map(flow_out),
    })
    .failing_if(kernel.classes as u64 != census, || "kernel census differs from |det κ|".into());
    r.csv = csv;
    Ok(r)
}

fn cmd_root_data(algebra: &str) -> CliResult<Rendered> {
    let d = datum(algebra)?;
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        header: Header<'a>,
        algebra: String,
        rank: usize,
        dimension: usize,
        dual_coxeter: i64,
        weyl_order: usize,
        cartan_matrix: Vec<Vec<i64>>,
        /// `⟨ω_i, ω_j⟩` in the basic form.
        fundamental_gram: Vec<Vec<String>>,
        rho: Vec<i64>,
        highest_root: Vec<i64>,
        /// Fundamental-weight coordinates.
        positive_roots: Vec<Vec<i64>>,
        /// Simple-root coordinates.
        positive_roots_simple: Vec<Vec<i64>>,
    }
    Ok(Rendered::json(&Out {
        header: header("root-data"),
        algebra: d.spec.to_string(),
        rank: d.rank(),
        dimension: d.spec.dim(),
        dual_coxeter: d.h_dual,
        weyl_order: d.weyl_elements().len(),
        cartan_matrix: d.cartan_matrix.clone(),
        fundamental_gram: d.gram.iter().map(|r| rats(r)).collect(),
        rho: d.rho.0.clone(),
        highest_root: d.theta.0.clone(),
        positive_roots: d.positive_roots.iter().map(|w| w.0.clone()).collect(),
        positive_roots_simple: d.positive_roots_simple.clone(),
    }))
}

pub fn run(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Alcove { al, out } => emit(cmd_alcove(&al.algebra, al.level)?, &out, "alcove"),
        Command::TwistedAlcove { al, order, out } => {
            emit(cmd_twisted_alcove(&al.algebra, al.level, order)?, &out, "twisted-alcove")
        }
        Command::Fuse { al, left, right, out } => emit(cmd_fuse(&al.algebra, al.level, left, right)?, &out, "fuse"),
        Command::FusionTable { al, out } => emit(cmd_fusion_table(&al.algebra, al.level)?, &out, "fusion-table"),
        Command::VerifyFusion { al, out } => emit(cmd_verify_fusion(&al.algebra, al.level)?, &out, "verify-fusion"),
        Command::Smatrix { al, out } => emit(cmd_smatrix(&al.algebra, al.level)?, &out, "smatrix"),
        Command::Char {
            al,
            weight,
            cutoff,
            angles,
            part,
            out,
        } => emit(cmd_char(&al.algebra, al.level, weight, cutoff, angles, part)?, &out, "char"),
        Command::DiracCheck { aw, out } => emit(cmd_dirac_check(&aw.algebra, aw.weight)?, &out, "dirac-check"),
        Command::OrbitScan { aw, samples, seed, out } => {
            emit(cmd_orbit_scan(&aw.algebra, aw.weight, samples, seed)?, &out, "orbit-scan")
        }
        Command::Thom { aw, scale, steps, out } => emit(cmd_thom(&aw.algebra, aw.weight, scale, steps)?, &out, "thom"),
        Command::Kostant { aw, out } => emit(cmd_kostant(&aw.algebra, aw.weight)?, &out, "kostant"),
        Command::SpectralFlow {
            rank,
            kappa,
            lambda,
            from,
            to,
            samples,
            modes,
            out,
        } => emit(cmd_spectral_flow(rank, kappa, lambda, from, to, samples, modes)?, &out, "spectral-flow"),
        Command::RootData { algebra, out } => emit(cmd_root_data(&algebra)?, &out, "root-data"),
    }
}
