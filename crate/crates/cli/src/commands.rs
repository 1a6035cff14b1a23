use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;

use plie_core::algebra::exterior::{ExteriorElement, ExteriorTerm};
use plie_core::algebra::{named_algebra, parse_algebra, AlgebraFile, BracketAlgebra};
use plie_core::bockstein::{
    b2_direct, b2_via_lie, comodule_check, divided_power_sensitive_from, lhs_e3_dims, B2Report, BocksteinData,
    GradedRing,
};
use plie_core::cohomology::{cohomology, LieModule, SymConvention};
use plie_core::error::Error;
use plie_core::group::{
    associativity, gamma_tower, log_bracket, predicates, uniform_tower_check, Confidence, ExpGroup, GammaGroup,
    GroupPredicates, GroupView,
};
use plie_core::lifting::{brute_force_lift_oracle, obstruction, tower_extension_verdict, LiftProblem};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{AlgebraArgs, Command};

const DEFAULT_P: u64 = 5;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if !e.is_validation() => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) | CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// A loaded algebra plus the name it is shown under.
struct Input {
    name: String,
    algebra: BracketAlgebra,
    json: bool,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn load(args: &AlgebraArgs) -> Result<Input> {
    let (name, algebra) = match (&args.named, &args.file) {
        (Some(name), _) => {
            let l = named_algebra(name, args.p.unwrap_or(DEFAULT_P), args.k.unwrap_or(1))?;
            (name.clone(), l)
        }
        (None, Some(path)) => {
            let l = parse_algebra(&read(path)?)?;
            let r = l.modulus();
            if args.p.is_some_and(|p| p != r.p()) || args.k.is_some_and(|k| k != r.k()) {
                return Err(CliError::Usage(format!(
                    "-p/-k disagree with {} (p = {}, k = {})",
                    path.display(),
                    r.p(),
                    r.k()
                )));
            }
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            (stem, l)
        }
        (None, None) => return Err(CliError::Usage("one of --named or --file is required".into())),
    };
    Ok(Input {
        name,
        algebra,
        json: args.json,
    })
}

fn warn_small_prime(l: &BracketAlgebra) {
    if l.modulus().p() == 3 {
        eprintln!("warning: p = 3 is outside the range where the Bockstein and extension results are established");
    }
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialise")
}

fn emit(json: bool, value: Value, text: String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialise");
        s.push('\n');
        s
    } else {
        text
    }
}

fn ring_label(l: &BracketAlgebra) -> String {
    let r = l.modulus();
    if r.is_field() {
        format!("F_{}", r.p())
    } else {
        format!("Z/{}^{}", r.p(), r.k())
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt_yes_no(b: Option<bool>) -> &'static str {
    b.map(yes_no).unwrap_or("undecided")
}

/// `Σ c_t e_t` with signed coefficients.
fn format_vector(l: &BracketAlgebra, v: &[u64]) -> String {
    let r = l.modulus();
    let mut out = String::new();
    for (t, &c) in v.iter().enumerate() {
        let c = r.signed(c);
        if c == 0 {
            continue;
        }
        let label = &l.labels()[t];
        let mag = c.unsigned_abs();
        let body = if mag == 1 { label.clone() } else { format!("{mag}{label}") };
        if out.is_empty() {
            out = if c < 0 { format!("-{body}") } else { body };
        } else {
            let _ = write!(out, " {} {body}", if c < 0 { '-' } else { '+' });
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn run(cmd: Command) -> Result<String> {
    match cmd {
        Command::CheckLie(a) => check_lie(&load(&a)?),
        Command::Cohomology {
            algebra,
            coeff,
            sym_convention,
            reps,
        } => cohomology_cmd(&load(&algebra)?, &coeff, sym_convention.into(), reps),
        Command::B2 {
            algebra,
            degree,
            eta,
            sym_convention,
        } => b2(&load(&algebra)?, degree as usize, eta.as_deref(), sym_convention.into()),
        Command::Exp { algebra, budget } => exp(&load(&algebra)?, budget.budget),
        Command::Gamma {
            n,
            k,
            p,
            verify,
            budget,
            json,
        } => gamma(n as usize, k, p, verify, budget.budget, json),
        Command::Lift {
            algebra,
            verify,
            budget,
        } => lift(&load(&algebra)?, verify, budget.budget),
        Command::E3 { algebra, degree } => e3(&load(&algebra)?, degree as usize),
        Command::Report { algebra, degree } => report(&load(&algebra)?, degree as usize),
    }
}

fn check_lie(input: &Input) -> Result<String> {
    let l = &input.algebra;
    let jacobi = l.jacobi_form();
    let entries: Vec<_> = jacobi.entries().into_iter().filter(|(_, v)| v.iter().any(|&x| x != 0)).collect();
    let mut text = String::new();
    if entries.is_empty() {
        text.push_str("Lie: yes (Jacobi ≡ 0)\n");
    } else {
        let _ = writeln!(text, "Lie: no ({} nonzero Jacobi values)", entries.len());
        for ((i, j, k), v) in &entries {
            let lb = l.labels();
            let _ = writeln!(text, "  J({}, {}, {}) = {}", lb[*i], lb[*j], lb[*k], format_vector(l, v));
        }
    }
    let value = json!({
        "algebra": input.name,
        "p": l.modulus().p(),
        "k": l.modulus().k(),
        "lie": entries.is_empty(),
        "jacobi": entries
            .iter()
            .map(|((i, j, k), v)| json!({"i": i, "j": j, "k": k, "value": v}))
            .collect::<Vec<_>>(),
    });
    Ok(emit(input.json, value, text))
}

fn module_for(l: &BracketAlgebra, coeff: &str, convention: SymConvention) -> Result<LieModule> {
    match coeff {
        "trivial" => Ok(LieModule::trivial(l)?),
        "ad" => Ok(LieModule::ad(l)?),
        other => {
            let k = other
                .strip_prefix("sym:")
                .and_then(|k| k.parse::<usize>().ok())
                .ok_or_else(|| CliError::Usage(format!("unknown coefficients `{other}`; use trivial, ad or sym:k")))?;
            Ok(LieModule::sym(l, k, convention)?)
        }
    }
}

fn cohomology_cmd(input: &Input, coeff: &str, convention: SymConvention, reps: bool) -> Result<String> {
    let l = &input.algebra;
    let m = module_for(l, coeff, convention)?;
    let h = cohomology(l, &m, reps)?;
    let n = l.dim();
    let cochain_dims: Vec<u64> = (0..=n).map(|d| binomial(n, d) * m.dim() as u64).collect();
    let mut text = format!("H^*({}; {}) over {}\n", input.name, h.module, ring_label(l));
    if h.sign_flipped {
        text.push_str("note: the action satisfies the module axiom only after negation; the negated action is used\n");
    }
    text.push_str(" ℓ  dim C^ℓ  dim H^ℓ\n");
    for (d, (&c, &hd)) in cochain_dims.iter().zip(&h.dims).enumerate() {
        let _ = writeln!(text, "{d:>2}  {c:>7}  {hd:>7}");
    }
    let _ = writeln!(text, "Euler characteristic: {}", h.euler_characteristic());
    if let Some(reps) = &h.representatives {
        for (d, classes) in reps.iter().enumerate() {
            for v in classes {
                let _ = writeln!(text, "  H^{d} representative: {v:?}");
            }
        }
    }
    let mut value = to_json(&h);
    value["algebra"] = json!(input.name);
    value["cochain_dims"] = json!(cochain_dims);
    value["euler_characteristic"] = json!(h.euler_characteristic());
    Ok(emit(input.json, value, text))
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn read_eta(l: &BracketAlgebra, path: &Path) -> Result<Vec<ExteriorElement>> {
    let raw: Vec<Vec<ExteriorTerm>> =
        serde_json::from_str(&read(path)?).map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display())))?;
    if raw.len() != l.dim() {
        return Err(Error::DimensionMismatch(format!("η has {} components, algebra has dimension {}", raw.len(), l.dim())).into());
    }
    raw.iter()
        .map(|terms| ExteriorElement::from_terms(l.modulus(), l.dim(), terms).map_err(CliError::from))
        .collect()
}

struct B2Result {
    direct: B2Report,
    via_lie: Option<B2Report>,
}

fn compute_b2(bd: &BocksteinData, degree: usize, convention: SymConvention) -> Result<B2Result> {
    let direct = b2_direct(bd, degree)?;
    let via_lie = if bd.eta_is_zero() {
        Some(b2_via_lie(bd.algebra(), degree, convention)?)
    } else {
        None
    };
    Ok(B2Result { direct, via_lie })
}

fn b2_table(name: &str, l: &BracketAlgebra, res: &B2Result, convention: SymConvention) -> String {
    let sensitive = divided_power_sensitive_from(l.modulus().p());
    let mut text = format!(
        "B₂ of G({name}) over {}, degrees 0..{}{}\n",
        ring_label(l),
        res.direct.degrees.len().saturating_sub(1),
        if res.direct.eta_zero { "" } else { ", η ≠ 0" }
    );
    text.push_str(" d    B₁   B₂  via Lie  by weight\n");
    let mut flagged = false;
    for (i, row) in res.direct.degrees.iter().enumerate() {
        let via = match &res.via_lie {
            Some(v) => {
                let other = v.degrees[i].b2;
                let mark = if other == row.b2 { "" } else { " ≠" };
                format!("{other}{mark}")
            }
            None => "-".into(),
        };
        let weights: Vec<String> = row.by_weight.iter().map(|w| format!("k{}:{}", w.k, w.dim)).collect();
        let flag = if row.d >= sensitive {
            flagged = true;
            " *"
        } else {
            ""
        };
        let _ = writeln!(text, "{:>2}  {:>4}  {:>3}  {:>7}  {}{flag}", row.d, row.b1, row.b2, via, weights.join(" "));
    }
    if flagged {
        let conv = match convention {
            SymConvention::Forms => "forms",
            SymConvention::Polynomial => "polynomial",
        };
        let _ = writeln!(
            text,
            "* degree ≥ 2p = {sensitive}: weights k ≥ p appear and the via-Lie column depends on the S^k convention ({conv})"
        );
    }
    text
}

fn b2_json(res: &B2Result) -> Value {
    let agree = res.via_lie.as_ref().map(|v| v.b2() == res.direct.b2());
    json!({
        "direct": to_json(&res.direct),
        "via_lie": res.via_lie.as_ref().map(to_json),
        "agree": agree,
    })
}

fn b2(input: &Input, degree: usize, eta: Option<&Path>, convention: SymConvention) -> Result<String> {
    let l = &input.algebra;
    warn_small_prime(l);
    let eta = eta.map(|p| read_eta(l, p)).transpose()?;
    let bd = BocksteinData::new(l.clone(), eta)?;
    let res = compute_b2(&bd, degree, convention)?;
    let text = b2_table(&input.name, l, &res, convention);
    let mut value = b2_json(&res);
    value["algebra"] = json!(input.name);
    Ok(emit(input.json, value, text))
}

fn predicates_text(pr: &GroupPredicates) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "order: {}", pr.order);
    let _ = writeln!(text, "exponent: {}", pr.exponent);
    let _ = writeln!(text, "powerful: {}", yes_no(pr.powerful));
    let _ = writeln!(text, "p-central: {}", yes_no(pr.p_central));
    if let Some(o) = pr.omega1_order {
        let _ = writeln!(text, "|Ω₁|: {o}");
    }
    if let Some(o) = pr.power_order {
        let _ = writeln!(text, "|G^p|: {o}");
    }
    if let Some(o) = pr.frattini_order {
        let _ = writeln!(text, "|Frat|: {o}");
    }
    let _ = writeln!(text, "Ω₁ = G^p = Frat: {}", opt_yes_no(pr.omega_power_frattini_equal));
    let _ = writeln!(text, "Ω₁ elementary abelian: {}", opt_yes_no(pr.omega1_elementary));
    if pr.confidence == Confidence::Sampled {
        text.push_str("(group exceeds the budget: predicates checked on samples)\n");
    }
    text
}

fn exp(input: &Input, budget: u64) -> Result<String> {
    let l = &input.algebra;
    let g = ExpGroup::new(l.clone())?;
    let assoc = associativity(&g, budget)?;
    let pr = predicates(&g, budget)?;
    let log = log_bracket(&g, budget)?.with_labels(l.labels().to_vec());
    let round_trip = log == *l;
    let mut text = format!("Exp({}) over Z/{}²\n", input.name, l.modulus().p());
    let _ = writeln!(
        text,
        "associative: {} ({}, {} triples)",
        yes_no(assoc.holds),
        confidence_label(assoc.confidence),
        assoc.triples_checked
    );
    text.push_str(&predicates_text(&pr));
    let _ = writeln!(text, "Log(Exp(L)) = L: {}", yes_no(round_trip));
    let value = json!({
        "algebra": input.name,
        "associativity": to_json(&assoc),
        "predicates": to_json(&pr),
        "log": AlgebraFile::from_algebra(&log),
        "log_round_trip": round_trip,
    });
    Ok(emit(input.json, value, text))
}

fn confidence_label(c: Confidence) -> &'static str {
    match c {
        Confidence::Exhaustive => "exhaustive",
        Confidence::Sampled => "sampled",
    }
}

fn gamma(n: usize, k: u32, p: u64, verify: bool, budget: u64, json_out: bool) -> Result<String> {
    let g = GammaGroup::new(n, k, p)?;
    let pr = predicates(&g, budget)?;
    let mut text = format!("{}\n", g.name());
    text.push_str(&predicates_text(&pr));
    let mut value = json!({"n": n, "k": k, "p": p, "predicates": to_json(&pr)});
    if verify {
        let tower = uniform_tower_check(&gamma_tower(n, k, p)?, budget)?;
        let _ = writeln!(text, "tower of {} stages uniform: {}", tower.stages.len(), yes_no(tower.uniform));
        value["tower"] = to_json(&tower);
        if k == 2 {
            let gl = named_algebra(&format!("gln({n})"), p, 1)?;
            let log = log_bracket(&g, budget)?.rescaled(2).with_labels(gl.labels().to_vec());
            let iso = log == gl;
            let _ = writeln!(text, "Log ≅ gl{n}(F_{p}) (via rescaled(2)): {}", yes_no(iso));
            value["log_is_gln"] = json!(iso);
        } else {
            text.push_str("Log: only identified for k = 2\n");
            value["log_is_gln"] = Value::Null;
        }
    }
    Ok(emit(json_out, value, text))
}

fn lift(input: &Input, verify: bool, budget: u64) -> Result<String> {
    let l = &input.algebra;
    warn_small_prime(l);
    let problem = LiftProblem::new(l.clone())?;
    let report = obstruction(&problem)?;
    let r = l.modulus();
    let mut text = format!(
        "lifting {} from Z/{}^{} to Z/{}^{}\n",
        input.name,
        r.p(),
        r.k(),
        r.p(),
        report.target_exponent
    );
    let reduction = problem.reduction();
    for (t, terms) in report.eta.iter().enumerate() {
        let body: Vec<String> = terms
            .iter()
            .map(|term| {
                let idx: Vec<&str> = term.indices.iter().map(|&i| reduction.labels()[i].as_str()).collect();
                format!("{}·{}", term.coeff, idx.join("∧"))
            })
            .collect();
        let body = if body.is_empty() { "0".to_string() } else { body.join(" + ") };
        let _ = writeln!(text, "η_{} = {body}", reduction.labels()[t]);
    }
    let _ = writeln!(text, "[η] = 0: {}", yes_no(report.obstruction_zero));
    if let Some(mu) = &report.mu {
        let _ = writeln!(text, "correction μ: {mu:?}");
    }
    if let Some(c) = &report.corrected_constants {
        let _ = writeln!(text, "corrected constants: {}", serde_json::to_string(c).expect("serialises"));
    }
    let _ = writeln!(text, "{}", report.tower_verdict);
    let mut value = to_json(&report);
    value["algebra"] = json!(input.name);
    if verify {
        let oracle = brute_force_lift_oracle(&problem, budget)?;
        let agrees = oracle == report.obstruction_zero;
        let _ = writeln!(text, "exhaustive search: lift {} (agrees: {})", if oracle { "exists" } else { "does not exist" }, yes_no(agrees));
        value["oracle"] = json!(oracle);
        if !agrees {
            return Err(Error::Internal("obstruction disagrees with exhaustive search".into()).into());
        }
    }
    Ok(emit(input.json, value, text))
}

fn e3_rows(l: &BracketAlgebra, degree: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let e3 = lhs_e3_dims(l, degree)?;
    let ring = GradedRing::new(l.modulus(), vec![String::new(); l.dim()], vec![String::new(); l.dim()], degree)?;
    let expected = (0..degree).map(|d| ring.count(d)).collect();
    Ok((e3, expected))
}

fn e3(input: &Input, degree: usize) -> Result<String> {
    let l = &input.algebra;
    warn_small_prime(l);
    let (e3, expected) = e3_rows(l, degree)?;
    let mut text = format!("E₃ of G({}) over {}, degrees 0..{}\n", input.name, ring_label(l), degree - 1);
    text.push_str(" d   E₃  Λ⊗S\n");
    for (d, (a, b)) in e3.iter().zip(&expected).enumerate() {
        let _ = writeln!(text, "{d:>2}  {a:>3}  {b:>3}");
    }
    let matches = e3 == expected;
    let _ = writeln!(text, "E₃ ≅ Λ(x)⊗F_p[s]: {}", yes_no(matches));
    let value = json!({"algebra": input.name, "e3": e3, "expected": expected, "matches": matches});
    Ok(emit(input.json, value, text))
}

fn report(input: &Input, degree: usize) -> Result<String> {
    let l = &input.algebra;
    warn_small_prime(l);
    let lie = l.is_lie();
    let mut text = format!("{} over {} (dimension {})\n", input.name, ring_label(l), l.dim());
    let _ = writeln!(text, "Lie: {}", yes_no(lie));
    let mut value = json!({"algebra": input.name, "p": l.modulus().p(), "k": l.modulus().k(), "lie": lie});

    let tower = tower_extension_verdict(l)?;
    let _ = writeln!(text, "tower: {}", tower.summary);
    value["tower"] = to_json(&tower);

    let (e3, expected) = e3_rows(l, degree)?;
    let _ = writeln!(text, "E₃ ≅ Λ(x)⊗F_p[s] below degree {degree}: {}", yes_no(e3 == expected));
    value["e3"] = json!({"e3": e3, "expected": expected, "matches": e3 == expected});

    if lie {
        let h = cohomology(l, &LieModule::trivial(l)?, false)?;
        let _ = writeln!(text, "H^*(L; F_p): {:?}", h.dims);
        value["trivial_cohomology"] = json!(h.dims);

        let bd = BocksteinData::new(l.clone(), None)?;
        let comodule = comodule_check(&bd)?;
        let _ = writeln!(text, "comodule Δβ = βΔ: {}", yes_no(comodule.compatible()));
        value["comodule"] = to_json(&comodule);

        let res = compute_b2(&bd, degree, SymConvention::Forms)?;
        text.push_str(&b2_table(&input.name, l, &res, SymConvention::Forms));
        value["b2"] = b2_json(&res);
    }
    Ok(emit(input.json, value, text))
}
