use rankrange::closed_form::{boundary, classify, discretize, region_contains, set_ckm, set_dk};
use rankrange::compare::compare_with_sweep;
use rankrange::geometry::{ConvexRegion, Point};
use rankrange::linalg::Complex;
use rankrange::sampler::{outer_region, Membership, MembershipOracle, RefineOptions, SpectralSweep, SupportProfile};
use serde_json::{json, Value};

use crate::args::{ClassifyArgs, CompareArgs, Engine, Format, MemberArgs, PlotArgs, SampleArgs, SamplingArgs};
use crate::error::CliError;
use crate::input::{parse_complex, Input, RankSpec};
use crate::json::{one_or_many, render, to_value};
use crate::svg::{self, Figure, SetOverlay};

/// Arc resolution for polygonal output of closed-form regions in JSON.
const JSON_ARC_STEPS: usize = 360;

/// What a command produced. `disagreement` asks for exit code 4.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub body: String,
    pub disagreement: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, disagreement: false }
    }
}

fn json_only(format: Option<Format>, command: &str) -> Result<(), CliError> {
    match format {
        Some(Format::Svg) => Err(CliError::Parse(format!("{command} only writes JSON"))),
        _ => Ok(()),
    }
}

fn complex_json(z: Complex) -> Value {
    json!([z.re, z.im])
}

fn model_json(input: &Input) -> Value {
    match input {
        Input::Model(model) => json!({
            "n": model.n(),
            "m": model.m(),
            "alpha": complex_json(model.alpha()),
            "beta": complex_json(model.beta()),
        }),
        Input::Matrix(t) => json!({ "rows": t.rows() }),
    }
}

fn profile_for(sweep: &SpectralSweep, k: usize, sampling: &SamplingArgs) -> Result<SupportProfile, CliError> {
    Ok(if sampling.refine { sweep.refined_profile(k, &RefineOptions::default())? } else { sweep.profile(k)? })
}

pub fn classify_cmd(args: &ClassifyArgs) -> Result<Output, CliError> {
    json_only(args.output.format, "classify")?;
    let input = Input::from_args(&args.input)?;
    let model = input.model("classify")?;
    let ranks = RankSpec::parse(&args.input.k)?.ranks(model.dim())?;
    let mut items = Vec::new();
    for k in ranks {
        let desc = classify(model, k)?;
        let kind =
            if desc.is_empty() { ConvexRegion::empty().kind() } else { discretize(&desc, JSON_ARC_STEPS)?.kind() };
        let mut v = to_value(&desc)?;
        let obj = v.as_object_mut().expect("descriptor is an object");
        obj.insert("kind".into(), to_value(&kind)?);
        obj.insert(
            "sets".into(),
            json!({ "d_k": to_value(&set_dk(model, k)?)?, "c_km": to_value(&set_ckm(model, k)?)? }),
        );
        items.push(v);
    }
    Ok(Output::ok(render(one_or_many(items))))
}

pub fn sample_cmd(args: &SampleArgs) -> Result<Output, CliError> {
    json_only(args.output.format, "sample")?;
    let input = Input::from_args(&args.input)?;
    let ranks = RankSpec::parse(&args.input.k)?.ranks(input.dim())?;
    let sweep = SpectralSweep::new(&input.matrix(), args.sampling.resolution)?;
    let items =
        ranks.into_iter().map(|k| to_value(&profile_for(&sweep, k, &args.sampling)?)).collect::<Result<Vec<_>, _>>()?;
    Ok(Output::ok(render(one_or_many(items))))
}

pub fn compare_cmd(args: &CompareArgs) -> Result<Output, CliError> {
    json_only(args.output.format, "compare")?;
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(CliError::Invalid(format!("--tol must be positive, got {}", args.tol)));
    }
    let input = Input::from_args(&args.input)?;
    let model = input.model("compare")?;
    let ranks = RankSpec::parse(&args.input.k)?.ranks(model.dim())?;
    let sweep = SpectralSweep::new(&input.matrix(), args.resolution)?;
    let point_tol = 1e-6;
    let mut results = Vec::new();
    let mut all_agree = true;
    for k in ranks {
        let pair = compare_with_sweep(model, &sweep, k, Some(&RefineOptions::default()))?;
        let agree = pair.comparison.agrees(args.tol, point_tol);
        all_agree &= agree;
        let mut v = to_value(&pair.comparison)?;
        v.as_object_mut().expect("comparison is an object").insert("agree".into(), Value::Bool(agree));
        results.push(v);
    }
    let report = json!({
        "model": model_json(&input),
        "resolution": args.resolution,
        "tol": args.tol,
        "point_tol": point_tol,
        "agree": all_agree,
        "results": results,
    });
    Ok(Output { body: render(report), disagreement: !all_agree })
}

fn verdict_name(m: Membership) -> &'static str {
    match m {
        Membership::Inside => "inside",
        Membership::Outside => "outside",
        Membership::BoundaryUncertain => "boundary-uncertain",
    }
}

fn resolve_engine(requested: Option<Engine>, input: &Input, command: &str) -> Result<Engine, CliError> {
    match (requested, input) {
        (None, Input::Matrix(_)) => Ok(Engine::Sampler),
        (Some(Engine::Sampler), _) => Ok(Engine::Sampler),
        (Some(e), Input::Matrix(_)) => {
            Err(CliError::Invalid(format!("{command} with --matrix-file only supports --engine sampler, got {e:?}")))
        }
        (Some(e), Input::Model(_)) => Ok(e),
        (None, Input::Model(_)) => Ok(Engine::Both),
    }
}

pub fn member_cmd(args: &MemberArgs) -> Result<Output, CliError> {
    json_only(args.output.format, "member")?;
    let input = Input::from_args(&args.input)?;
    let mu = parse_complex(&args.mu)?;
    let ranks = RankSpec::parse(&args.input.k)?.ranks(input.dim())?;
    let engine = resolve_engine(args.engine, &input, "member")?;
    if let Some(tol) = args.tol {
        if tol.is_nan() || tol <= 0.0 {
            return Err(CliError::Invalid(format!("--tol must be positive, got {tol}")));
        }
    }
    let sweep = match engine {
        Engine::Closed => None,
        _ => Some(SpectralSweep::new(&input.matrix(), args.sampling.resolution)?),
    };
    let mut items = Vec::new();
    let mut disagreement = false;
    for k in ranks {
        let mut obj = serde_json::Map::new();
        obj.insert("k".into(), json!(k));
        obj.insert("mu".into(), complex_json(mu));
        let closed = match engine {
            Engine::Sampler => None,
            _ => Some(region_contains(&classify(input.model("member")?, k)?, mu)),
        };
        if let Some(inside) = closed {
            obj.insert("closed".into(), json!(if inside { "inside" } else { "outside" }));
        }
        if let Some(sweep) = &sweep {
            let profile = profile_for(sweep, k, &args.sampling)?;
            let oracle = MembershipOracle::from_profile(sweep.clone(), profile, args.tol)?;
            let verdict = oracle.member(mu)?;
            obj.insert("sampler".into(), json!(verdict_name(verdict)));
            obj.insert("tol".into(), json!(oracle.tol()));
            if let Some(inside) = closed {
                disagreement |= matches!((inside, verdict), (true, Membership::Outside) | (false, Membership::Inside));
            }
        }
        items.push(Value::Object(obj));
    }
    Ok(Output { body: render(one_or_many(items)), disagreement })
}

pub fn plot_cmd(args: &PlotArgs) -> Result<Output, CliError> {
    let input = Input::from_args(&args.input)?;
    let k = match RankSpec::parse(&args.input.k)? {
        RankSpec::One(k) => RankSpec::One(k).ranks(input.dim())?[0],
        RankSpec::All => return Err(CliError::Parse("plot draws one rank; pass --k <index>".into())),
    };
    let engine = match (args.engine, &input) {
        (None, Input::Model(_)) => Engine::Closed,
        (e, _) => resolve_engine(e, &input, "plot")?,
    };
    if args.show_sets && matches!(input, Input::Matrix(_)) {
        return Err(CliError::Invalid("--show-sets needs a closed-form model".into()));
    }
    let matrix = input.matrix();

    let desc = match engine {
        Engine::Sampler => None,
        _ => Some(classify(input.model("plot")?, k)?),
    };
    let sampled = match engine {
        Engine::Closed => None,
        _ => {
            let sweep = SpectralSweep::new(&matrix, args.sampling.resolution)?;
            Some(outer_region(&profile_for(&sweep, k, &args.sampling)?)?)
        }
    };
    let support_lines: Vec<(f64, f64)> = if args.lines == 0 {
        Vec::new()
    } else if args.lines < rankrange::sampler::MIN_RESOLUTION {
        return Err(CliError::Invalid(format!("--lines must be 0 or at least {}", rankrange::sampler::MIN_RESOLUTION)));
    } else {
        SpectralSweep::new(&matrix, args.lines)?.profile(k)?.samples().collect()
    };

    let empty = match (&desc, &sampled) {
        (Some(d), _) => d.is_empty(),
        (None, Some(r)) => r.is_empty(),
        (None, None) => unreachable!("some engine always runs"),
    };
    let (title, anchors, sets) = match &input {
        Input::Model(model) => {
            let title = format!(
                "rank {k} range of J_{}({}) + ({}) I_{}",
                model.n(),
                fmt_complex(model.alpha()),
                fmt_complex(model.beta()),
                model.m()
            );
            let sets = if args.show_sets {
                Some(SetOverlay {
                    center: Point::from(model.alpha()),
                    psi: model.psi(),
                    d_k: set_dk(model, k)?,
                    c_km: set_ckm(model, k)?,
                })
            } else {
                None
            };
            (title, vec![Point::from(model.alpha()), Point::from(model.beta())], sets)
        }
        Input::Matrix(t) => (format!("rank {k} range of a {0}x{0} matrix", t.rows()), vec![Point::new(0.0, 0.0)], None),
    };

    match args.output.format.unwrap_or(Format::Svg) {
        Format::Svg => {
            let figure = Figure {
                title,
                boundary: desc.as_ref().map(boundary).unwrap_or_default(),
                sampled: sampled.clone(),
                support_lines,
                sets,
                empty,
                anchors,
            };
            Ok(Output::ok(svg::render(&figure)))
        }
        Format::Json => {
            let closed = match &desc {
                Some(d) => json!({
                    "descriptor": to_value(d)?,
                    "region": to_value(&if d.is_empty() { ConvexRegion::empty() } else { discretize(d, JSON_ARC_STEPS)? })?,
                }),
                None => Value::Null,
            };
            let sampled = match &sampled {
                Some(r) => json!({ "region": to_value(r)? }),
                None => Value::Null,
            };
            Ok(Output::ok(render(json!({
                "k": k,
                "model": model_json(&input),
                "empty": empty,
                "closed": closed,
                "sampled": sampled,
            }))))
        }
    }
}

fn fmt_complex(z: Complex) -> String {
    let re = crate::json::round12(z.re);
    let im = crate::json::round12(z.im);
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re}"),
        (true, false) => format!("{im}i"),
        (false, false) if im < 0.0 => format!("{re}-{}i", -im),
        _ => format!("{re}+{im}i"),
    }
}
