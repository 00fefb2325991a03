//! The subcommands, as functions from arguments to report text and an exit
//! status.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use biform_core::endo::{cayley_hamilton_residual, girard_newton_residuals, power_trace};
use biform_core::scalar::format_scalar;
use biform_core::{
    determinant, invariants, is_pure_in_basis, newton_t, pontrjagin_form, pontrjagin_product, CharacteristicForm,
    CurvatureTensor, DoubleForm, Matrix, Scalar, MAX_DIM,
};
use serde_json::json;
use thiserror::Error;

use crate::document::{DocumentError, Kind, Tensor, TensorDocument};
use crate::verify::{self, Status, VerifyError};

/// Dimension cap when `BIFORM_MAX_N` is unset.
pub const DEFAULT_MAX_N: usize = 6;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_IDENTITY_FAILURE: u8 = 1;
pub const EXIT_INPUT_ERROR: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Document {
        path: PathBuf,
        #[source]
        source: DocumentError,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Algebra(#[from] biform_core::Error),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        EXIT_INPUT_ERROR
    }
}

/// Report text plus the process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn pass(text: String) -> Self {
        Output { text, code: EXIT_PASS }
    }
}

/// The dimension cap, from `BIFORM_MAX_N` or [`DEFAULT_MAX_N`].
pub fn max_n() -> Result<usize, CliError> {
    match std::env::var("BIFORM_MAX_N") {
        Err(_) => Ok(DEFAULT_MAX_N),
        Ok(text) => match text.trim().parse::<usize>() {
            Ok(v) if (2..=MAX_DIM).contains(&v) => Ok(v),
            _ => Err(CliError::Input(format!("BIFORM_MAX_N = {text:?} is not an integer in 2..={MAX_DIM}"))),
        },
    }
}

pub fn load(path: &Path) -> Result<TensorDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let doc = TensorDocument::parse(&text).map_err(|source| CliError::Document {
        path: path.to_path_buf(),
        source,
    })?;
    let cap = max_n()?;
    if doc.n() > cap {
        return Err(CliError::Input(format!(
            "{}: n = {} exceeds BIFORM_MAX_N = {cap}",
            path.display(),
            doc.n()
        )));
    }
    Ok(doc)
}

fn expect_kind(path: &Path, doc: &TensorDocument, allowed: &[Kind]) -> Result<(), CliError> {
    if allowed.contains(&doc.kind) {
        return Ok(());
    }
    let names: Vec<String> = allowed.iter().map(ToString::to_string).collect();
    Err(CliError::Input(format!(
        "{}: expected a {} document, found {}",
        path.display(),
        names.join(" or "),
        doc.kind
    )))
}

fn load_form(path: &Path, allowed: &[Kind]) -> Result<DoubleForm, CliError> {
    let doc = load(path)?;
    expect_kind(path, &doc, allowed)?;
    match doc.tensor {
        Tensor::Form(f) => Ok(f),
        Tensor::Basis(_) => unreachable!("basis documents are rejected by kind"),
    }
}

fn load_bilinear(path: &Path) -> Result<DoubleForm, CliError> {
    let h = load_form(path, &[Kind::Bilinear])?;
    if !h.is_homogeneous_of(1, 1) {
        return Err(CliError::Input(format!("{}: a bilinear form has only (1,1) terms", path.display())));
    }
    Ok(h)
}

fn render_matrix(form: &DoubleForm) -> String {
    let rows: Vec<String> = form
        .to_matrix()
        .iter()
        .map(|row| format!("[{}]", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn render_list(values: &[Scalar]) -> String {
    format!("[{}]", values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

/// Characteristic coefficients, determinant, power traces, Newton
/// transformations and the Girard–Newton and Cayley–Hamilton residuals.
pub fn invariants_report(path: &Path) -> Result<Output, CliError> {
    let h = load_bilinear(path)?;
    let n = h.n();
    let s = invariants(&h)?;
    let mut out = String::new();
    let _ = writeln!(out, "n = {n}");
    let _ = writeln!(out, "det = {}", determinant(&h)?);
    for (p, v) in s.iter().enumerate() {
        let _ = writeln!(out, "s_{p} = {v}");
    }
    for i in 1..=n {
        let _ = writeln!(out, "p_{i} = {}", power_trace(&h, i)?);
    }
    for p in 0..n {
        let _ = writeln!(out, "t_{p} = {}", render_matrix(&newton_t(&h, p)?));
    }
    let _ = writeln!(out, "girard-newton residuals = {}", render_list(&girard_newton_residuals(&h)?));
    let ch = cayley_hamilton_residual(&h)?;
    let _ = writeln!(out, "cayley-hamilton residual = {}", if ch.is_zero() { "0".to_string() } else { ch.to_string() });
    Ok(Output::pass(out))
}

pub fn det_report(path: &Path) -> Result<Output, CliError> {
    let h = load_bilinear(path)?;
    Ok(Output::pass(format!("{}\n", determinant(&h)?)))
}

/// Which Pontrjagin form to compute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PontrjaginSelection {
    Single(usize),
    Product(Vec<usize>),
}

pub fn load_curvature(path: &Path, allow_non_bianchi: bool) -> Result<CurvatureTensor, CliError> {
    let form = load_form(path, &[Kind::Curvature, Kind::Doubleform])?;
    let checked = if allow_non_bianchi {
        CurvatureTensor::new_unchecked(form)
    } else {
        CurvatureTensor::new(form)
    };
    checked.map_err(|e| {
        let hint = if allow_non_bianchi { "" } else { " (use --allow-non-bianchi to override)" };
        CliError::Input(format!("{}: not an algebraic curvature tensor: {e}{hint}", path.display()))
    })
}

pub fn pontrjagin_report(
    path: &Path,
    selection: &PontrjaginSelection,
    decimal: bool,
    allow_non_bianchi: bool,
) -> Result<Output, CliError> {
    let r = load_curvature(path, allow_non_bianchi)?;
    let n = r.n();
    let weight = match selection {
        PontrjaginSelection::Single(k) => *k,
        PontrjaginSelection::Product(ks) => ks.iter().enumerate().map(|(i, k)| (i + 1) * k).sum(),
    };
    if weight == 0 && matches!(selection, PontrjaginSelection::Single(_)) {
        return Err(CliError::Input("--k must be at least 1".into()));
    }
    if 4 * weight > n {
        return Err(CliError::Input(format!("degree 4k = {} exceeds n = {n}", 4 * weight)));
    }
    let CharacteristicForm { form, normalization } = match selection {
        PontrjaginSelection::Single(k) => pontrjagin_form(&r, *k)?,
        PontrjaginSelection::Product(ks) => pontrjagin_product(&r, ks)?,
    };
    let terms: Vec<_> = form
        .terms()
        .map(|(i, v)| json!({"index": i.to_vec(), "value": format_scalar(v)}))
        .collect();
    let mut norm = json!({
        "rational": format_scalar(&normalization.rational),
        "pi_power": normalization.pi_power,
    });
    if decimal {
        norm["decimal"] = json!(format!("{:.15e}", normalization.to_f64()));
    }
    let selected = match selection {
        PontrjaginSelection::Single(k) => json!({"k": k}),
        PontrjaginSelection::Product(ks) => json!({"exponents": ks}),
    };
    let value = json!({
        "n": n,
        "degree": form.degree(),
        "selection": selected,
        "normalization": norm,
        "terms": terms,
    });
    let mut text = serde_json::to_string_pretty(&value).expect("reports always serialize");
    text.push('\n');
    Ok(Output::pass(text))
}

/// Whether `R^p` is diagonal in the given orthonormal basis.
pub fn purity_report(path: &Path, p: usize, basis: Option<&Path>) -> Result<Output, CliError> {
    let r = load_curvature(path, false)?;
    let n = r.n();
    if p == 0 || 2 * p > n {
        return Err(CliError::Input(format!("--p must satisfy 1 <= p <= n/2 (n = {n})")));
    }
    let matrix = match basis {
        None => Matrix::identity(n),
        Some(b) => {
            let doc = load(b)?;
            expect_kind(b, &doc, &[Kind::Basis])?;
            let Tensor::Basis(m) = doc.tensor else { unreachable!("kind checked") };
            if m.rows() != n {
                return Err(CliError::Input(format!(
                    "{}: basis dimension {} does not match n = {n}",
                    b.display(),
                    m.rows()
                )));
            }
            m
        }
    };
    let rp = r.form().pow(p);
    let report = is_pure_in_basis(&rp, &matrix).map_err(|e| match basis {
        Some(b) => CliError::Input(format!("{}: {e}", b.display())),
        None => CliError::Algebra(e),
    })?;
    let mut out = String::new();
    let _ = writeln!(out, "n = {n}");
    let _ = writeln!(out, "p = {p}");
    let _ = writeln!(
        out,
        "basis = {}",
        basis.map_or_else(|| "standard".to_string(), |b| b.display().to_string())
    );
    let _ = writeln!(out, "verdict = {}", if report.pure { "pure" } else { "not pure" });
    if 2 * p == n {
        let _ = writeln!(out, "note = R^p is a multiple of g^n when 2p = n, so every curvature tensor is p-pure");
    }
    let _ = writeln!(out, "residual terms = {}", report.residual.len());
    for (i, j, v) in &report.residual {
        let _ = writeln!(out, "  e{i}⊗e{j} = {v}");
    }
    Ok(Output::pass(out))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub suites: Vec<String>,
    pub n: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub counterexample_dir: PathBuf,
}

pub fn list_identities() -> Output {
    let mut out = String::new();
    for id in verify::IDENTITIES {
        let marker = if id.default_selected { "" } else { " [opt-in]" };
        let _ = writeln!(out, "{} (n >= {}, default {}){marker}: {}", id.name, id.min_n, id.default_n, id.statement);
    }
    Output::pass(out)
}

pub fn verify_report(options: &VerifyOptions) -> Result<Output, CliError> {
    let cap = max_n()?;
    if let Some(n) = options.n {
        if !(2..=cap).contains(&n) {
            return Err(CliError::Input(format!("--n {n} is outside 2..={cap}")));
        }
    }
    if options.trials == 0 {
        return Err(CliError::Input("--trials must be at least 1".into()));
    }
    let identities = verify::select(&options.suites)?;
    let mut out = String::new();
    let (mut passed, mut failed, mut skipped) = (0, 0, 0);
    for id in identities {
        let n = options.n.unwrap_or(id.default_n.min(cap));
        let report = verify::run_identity(id, n, options.trials, options.seed);
        let written = report
            .write_counterexample(&options.counterexample_dir)
            .map_err(|source| CliError::Io {
                path: options.counterexample_dir.clone(),
                source,
            })?;
        match report.status {
            Status::Pass => passed += 1,
            Status::Fail(_) => failed += 1,
            Status::Skip { .. } => skipped += 1,
        }
        out.push_str(&report.render(written.as_deref()));
        out.push('\n');
    }
    let _ = writeln!(out, "{passed} passed, {failed} failed, {skipped} skipped");
    Ok(Output {
        text: out,
        code: if failed == 0 { EXIT_PASS } else { EXIT_IDENTITY_FAILURE },
    })
}
