use std::fs;
use std::path::Path;

use rankrange::linalg::{Complex, ComplexMatrix, JordanScalarModel, MatrixForm};
use serde::Deserialize;

use crate::args::InputArgs;
use crate::error::CliError;

/// Parses `3`, `-2.5e-1`, `i`, `-i`, `2i`, `1+2i`, `1-2i`, `1.5e-3-2e2i` or the
/// polar form `r@degrees`.
pub fn parse_complex(text: &str) -> Result<Complex, CliError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::Parse(format!("not a complex number: {text:?}"));
    let real = |t: &str| t.parse::<f64>().map_err(|_| bad());
    if s.is_empty() {
        return Err(bad());
    }
    let z = if let Some((r, deg)) = s.split_once('@') {
        Complex::from_polar(real(r)?, real(deg)?.to_radians())
    } else if let Some(body) = s.strip_suffix(['i', 'j']) {
        let split = body
            .char_indices()
            .rev()
            .find(|&(i, c)| i > 0 && (c == '+' || c == '-') && !body[..i].ends_with(['e', 'E']))
            .map(|(i, _)| i);
        let imag = |t: &str| match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => real(t),
        };
        match split {
            Some(i) => Complex::new(real(&body[..i])?, imag(&body[i..])?),
            None => Complex::new(0.0, imag(body)?),
        }
    } else {
        Complex::new(real(&s)?, 0.0)
    };
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(bad());
    }
    Ok(z)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    rows: usize,
    entries: Vec<[f64; 2]>,
}

pub fn parse_matrix_json(text: &str) -> Result<ComplexMatrix, CliError> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("bad matrix file: {e}")))?;
    if file.rows == 0 || file.entries.len() != file.rows * file.rows {
        return Err(CliError::Parse(format!(
            "matrix file declares {} rows but holds {} entries",
            file.rows,
            file.entries.len()
        )));
    }
    let entries = file.entries.iter().map(|&[re, im]| Complex::new(re, im)).collect();
    Ok(ComplexMatrix::new(file.rows, file.rows, entries)?)
}

pub fn read_matrix_file(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_owned(), source })?;
    parse_matrix_json(&text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankSpec {
    All,
    One(usize),
}

impl RankSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        if text.eq_ignore_ascii_case("all") {
            return Ok(RankSpec::All);
        }
        match text.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(RankSpec::One(k)),
            _ => Err(CliError::Parse(format!("--k must be a positive integer or \"all\", got {text:?}"))),
        }
    }

    /// The ranks to process for a matrix of dimension `dim`.
    pub fn ranks(self, dim: usize) -> Result<Vec<usize>, CliError> {
        match self {
            RankSpec::All => Ok((1..=dim).collect()),
            RankSpec::One(k) if k <= dim => Ok(vec![k]),
            RankSpec::One(k) => Err(CliError::Invalid(format!("--k {k} exceeds the matrix dimension {dim}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Input {
    Model(JordanScalarModel),
    Matrix(ComplexMatrix),
}

impl Input {
    pub fn from_args(args: &InputArgs) -> Result<Self, CliError> {
        if let Some(path) = &args.matrix_file {
            let t = read_matrix_file(path)?;
            return Ok(Input::Matrix(t));
        }
        let n = args.n.ok_or_else(|| CliError::Parse("either --n or --matrix-file is required".into()))?;
        let alpha = parse_complex(&args.alpha)?;
        let beta = parse_complex(&args.beta)?;
        Ok(Input::Model(JordanScalarModel::new(n, args.m, alpha, beta)?))
    }

    pub fn matrix(&self) -> ComplexMatrix {
        match self {
            Input::Model(model) => model.materialize(MatrixForm::Original),
            Input::Matrix(t) => t.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Input::Model(model) => model.dim(),
            Input::Matrix(t) => t.rows(),
        }
    }

    pub fn model(&self, command: &str) -> Result<&JordanScalarModel, CliError> {
        match self {
            Input::Model(model) => Ok(model),
            Input::Matrix(_) => Err(CliError::Invalid(format!(
                "{command} needs the closed form, which only applies to --n/--m/--alpha/--beta models"
            ))),
        }
    }
}
