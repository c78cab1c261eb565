use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use qosc_core::fock::verify_relations;
use qosc_core::gauss::{gauss_binomial, q_number};
use qosc_core::hamiltonian::{eigen_crosscheck, hamiltonian_equivalence_check, inverse_root_check, spectrum_report};
use qosc_core::polychronakos::{compare_with_ladder, realize_deformed, unitarity_check, verify_f_recurrence};
use qosc_core::reducibility::{classify as classify_param, decompose, verify_invariant_subspaces, RepClass};
use qosc_core::roots::{q_number_is_zero, verify_bracket_relations};
use qosc_core::{BigInt, Complex64, DeformParam, IrrepDecomposition, QPoly, RootOfUnity};

use qosc_cli::report::{format_f64, Check, ReportEnvelope};
use crate::{CliError, ParamArgs, Scope, Status};

pub type Outcome = Result<(ReportEnvelope, String, Status), CliError>;

const SWEEP_REALS: [f64; 4] = [0.3, 0.9, 1.0, 2.5];
const DEFAULT_MAX_M: u64 = 12;
const DEFAULT_REAL_DIM: usize = 50;

fn big(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(i) => json!(i),
        None => json!(c.to_string()),
    }
}

fn coeffs_json(p: &QPoly) -> Value {
    Value::Array(p.coeffs().iter().map(big).collect())
}

fn complex_json(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn param_json(p: &DeformParam) -> Value {
    match p {
        DeformParam::Real(q) => json!({"real": q.get()}),
        DeformParam::Root(r) => json!({"root": {"m": r.order(), "j": r.index()}}),
    }
}

fn blocks_json(dec: &IrrepDecomposition) -> Value {
    json!({
        "count": dec.block_count,
        "dim": dec.block_dim,
        "ranges": dec.blocks.iter().map(|b| json!([b.start, b.end - 1])).collect::<Vec<_>>(),
    })
}

fn blocks_text(dec: &IrrepDecomposition) -> String {
    dec.blocks
        .iter()
        .map(|b| format!("[{}..{}]", b.start, b.end - 1))
        .collect::<Vec<_>>()
        .join(", ")
}

fn checks_table(checks: &[Check], out: &mut String) {
    if checks.is_empty() {
        return;
    }
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let _ = writeln!(out, "checks:");
    for c in checks {
        let _ = writeln!(
            out,
            "  {:<width$}  {}  {:.3e}",
            c.name,
            if c.passed { "PASS" } else { "FAIL" },
            c.max_residual
        );
    }
}

fn float_list(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(", ")
}

pub fn gauss(n: i64, m: i64) -> Outcome {
    let n = usize::try_from(n).map_err(|_| CliError::Usage(format!("n must be nonnegative, got {n}")))?;
    let p = gauss_binomial(n, m);
    let mut env = ReportEnvelope::new("gauss", json!({"n": n, "m": m}));
    env.results = json!({
        "coefficients": coeffs_json(&p),
        "degree": p.degree(),
        "value_at_one": big(&p.value_at_one()),
    });
    let mut t = String::new();
    let _ = writeln!(t, "[{n} over {m}] = {p}");
    let _ = writeln!(
        t,
        "coefficients: [{}]",
        p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
    );
    let _ = writeln!(t, "degree: {}", p.degree().map_or("-".to_string(), |d| d.to_string()));
    let _ = writeln!(t, "value at q=1: {}", p.value_at_one());
    Ok((env, t, Status::Ok))
}

pub fn qnumber(n: i64, args: &ParamArgs) -> Outcome {
    let n = u64::try_from(n).map_err(|_| CliError::Usage(format!("n must be nonnegative, got {n}")))?;
    let param = args.param()?;
    let p = q_number(n as usize);
    let mut env = ReportEnvelope::new(
        "qnumber",
        json!({"n": n, "param": param.as_ref().map(param_json)}),
    );
    let mut results = json!({
        "coefficients": coeffs_json(&p),
        "value_at_one": big(&p.value_at_one()),
    });
    let mut t = String::new();
    let _ = writeln!(t, "{{{n}}}_q = {p}");
    if let Some(param) = &param {
        let z = param.q_number(n);
        let modulus = param.abs_q_number(n);
        results["value"] = complex_json(z);
        results["modulus"] = json!(modulus);
        let _ = writeln!(t, "value at {param}: {} {:+}i", z.re, z.im);
        let _ = writeln!(t, "modulus: {modulus}");
        if let DeformParam::Root(r) = param {
            let zero = q_number_is_zero(n, r);
            results["is_zero"] = json!(zero);
            let _ = writeln!(t, "vanishes exactly: {zero}");
        }
    }
    env.results = results;
    Ok((env, t, Status::Ok))
}

pub fn classify(m: u64, j: u64) -> Outcome {
    let root = RootOfUnity::new(m, j).map_err(|e| CliError::Usage(e.to_string()))?;
    let dec = decompose(&root);
    let (l, s) = root.canonical_reduce();
    let class = match classify_param(&DeformParam::Root(root)) {
        RepClass::IrreducibleInfinite => "irreducible_infinite",
        RepClass::IrreducibleFinite { .. } => "irreducible_finite",
        RepClass::Reducible { .. } => "reducible",
    };
    let inv = verify_invariant_subspaces(&root, &dec);

    let mut env = ReportEnvelope::new("classify", json!({"m": m, "j": j}));
    env.results = json!({
        "primitive": root.is_primitive(),
        "class": class,
        "r": dec.block_count,
        "l": dec.block_dim,
        "reduced": {"l": l, "s": s},
        "blocks": blocks_json(&dec),
    });
    env.checks.push(Check::flag("invariant_subspaces", inv.passes()));

    let mut t = String::new();
    let _ = writeln!(t, "root exp(2 pi i {j}/{m}) = exp(2 pi i {s}/{l})");
    let _ = writeln!(t, "{}", if root.is_primitive() { "primitive" } else { "non-primitive" });
    let _ = writeln!(t, "class: {class}");
    let _ = writeln!(t, "r = {}, l = {}", dec.block_count, dec.block_dim);
    let _ = writeln!(t, "blocks: {}", blocks_text(&dec));
    checks_table(&env.checks, &mut t);
    let status = if env.all_passed() { Status::Ok } else { Status::InternalFault };
    Ok((env, t, status))
}

pub fn ham(args: &ParamArgs, tol: f64) -> Outcome {
    let param = args.require_param()?;
    let dim = args.dim_for(&param)?;
    if dim < 2 {
        return Err(CliError::Usage(format!("--dim must be at least 2, got {dim}")));
    }
    let report = spectrum_report(&param, dim);
    let equivalence = hamiltonian_equivalence_check(&param, dim).expect("dim checked above");
    let eigen = eigen_crosscheck(&param, dim);

    let mut env = ReportEnvelope::new("ham", json!({"param": param_json(&param), "dim": dim}));
    let mut results = json!({
        "diagonal": report.diagonal,
        "blocks": report.blocks.as_ref().map(blocks_json),
        "block_pattern_verified": report.block_pattern_verified,
        "equivalence_residual": equivalence,
        "eigen_crosscheck_residual": eigen,
    });
    env.checks.push(Check::residual("equivalence", equivalence, tol));
    env.checks.push(Check::residual("eigen_crosscheck", eigen, tol));
    env.checks.push(Check::flag("block_pattern", report.block_pattern_verified));
    if let DeformParam::Root(root) = &param {
        let same = inverse_root_check(root);
        results["inverse_root_identical"] = json!(same);
        env.checks.push(Check::flag("inverse_root", same));
    }
    env.results = results;

    let mut t = String::new();
    let _ = writeln!(t, "H at {param}, dim {dim} (units of hbar omega)");
    let _ = writeln!(t, "diagonal: {}", float_list(&report.diagonal));
    if let Some(dec) = &report.blocks {
        let _ = writeln!(
            t,
            "blocks: {} x {}  {}  pattern {}",
            dec.block_count,
            dec.block_dim,
            blocks_text(dec),
            if report.block_pattern_verified { "verified" } else { "BROKEN" }
        );
    }
    checks_table(&env.checks, &mut t);
    let status = if env.all_passed() { Status::Ok } else { Status::InternalFault };
    Ok((env, t, status))
}

fn sweep_params(args: &ParamArgs, max_m: u64) -> Result<Vec<(DeformParam, usize)>, CliError> {
    if let Some(p) = args.param()? {
        let dim = args.dim_for(&p)?;
        return Ok(vec![(p, dim)]);
    }
    let mut out = Vec::new();
    for m in 2..=max_m {
        for j in 1..m {
            out.push((DeformParam::root(m, j).expect("1 <= j < m"), m as usize));
        }
    }
    let real_dim = args.dim.unwrap_or(DEFAULT_REAL_DIM);
    for q in SWEEP_REALS {
        out.push((DeformParam::real(q).expect("positive"), real_dim));
    }
    Ok(out)
}

fn label(p: &DeformParam, dim: usize) -> String {
    match p {
        DeformParam::Real(q) => format!("real {} dim {dim}", q.get()),
        DeformParam::Root(r) if r.order() as usize == dim => format!("root {r}"),
        DeformParam::Root(r) => format!("root {r} dim {dim}"),
    }
}

fn verify_algebra(params: &[(DeformParam, usize)], tol: f64, results: &mut Vec<Value>, checks: &mut Vec<Check>) -> Result<(), CliError> {
    for (p, dim) in params {
        let res = verify_relations(p, *dim).map_err(|e| CliError::Usage(e.to_string()))?;
        for r in res {
            let name = format!("algebra {} {}", label(p, *dim), r.relation.name());
            results.push(json!({
                "param": param_json(p),
                "dim": dim,
                "relation": r.relation.name(),
                "max_abs_residual": r.max_abs_residual,
                "scaled_residual": r.scaled_residual,
                "checked_subspace": [r.checked_subspace.start, r.checked_subspace.end],
            }));
            checks.push(Check::residual(name, r.scaled_residual, tol));
        }
    }
    Ok(())
}

fn verify_brackets(max_m: u64, tol: f64, results: &mut Vec<Value>, checks: &mut Vec<Check>) {
    let report = verify_bracket_relations(max_m);
    for (name, id) in report.identities() {
        results.push(json!({
            "identity": name,
            "m_max": max_m,
            "cases": id.cases,
            "max_residual": id.max_residual,
            "worst": id.worst.map(|(m, j, k)| json!({"m": m, "j": j, "k": k})),
        }));
        checks.push(Check::residual(format!("brackets {name}"), id.max_residual, tol));
    }
}

fn verify_realization(params: &[(DeformParam, usize)], n_max: usize, tol: f64, results: &mut Vec<Value>, checks: &mut Vec<Check>) -> Result<(), CliError> {
    for (p, dim) in params {
        let cmp = compare_with_ladder(p, *dim).map_err(|e| CliError::Usage(e.to_string()))?;
        let f = verify_f_recurrence(p, n_max);
        let unitary = unitarity_check(p, *dim).map_err(|e| CliError::Usage(e.to_string()))?;
        let tag = label(p, *dim);
        results.push(json!({
            "param": param_json(p),
            "dim": dim,
            "max_entry_diff": cmp.max_entry_diff,
            "max_modulus_diff": cmp.max_modulus_diff,
            "f_recurrence_residual": f.recurrence_residual,
            "f_q_number_residual": f.q_number_residual,
            "unitary": unitary,
        }));
        match p {
            DeformParam::Real(_) => {
                checks.push(Check::residual(format!("realization {tag} entries"), cmp.max_entry_diff, tol));
                checks.push(Check::flag(format!("realization {tag} unitary"), unitary));
            }
            DeformParam::Root(_) => {
                checks.push(Check::residual(format!("realization {tag} moduli"), cmp.max_modulus_diff, tol));
            }
        }
        checks.push(Check::residual(format!("realization {tag} F recurrence"), f.recurrence_residual, tol));
        checks.push(Check::residual(format!("realization {tag} F = {{n}}"), f.q_number_residual, tol));
    }
    Ok(())
}

pub fn verify(scope: Scope, args: &ParamArgs, max_m: Option<u64>, tol: f64) -> Outcome {
    let max_m = max_m.unwrap_or(DEFAULT_MAX_M);
    if max_m < 2 {
        return Err(CliError::Usage(format!("--max-m must be at least 2, got {max_m}")));
    }
    let params = sweep_params(args, max_m)?;
    if let Some((_, dim)) = params.iter().find(|(_, d)| *d < 2) {
        return Err(CliError::Usage(format!("--dim must be at least 2, got {dim}")));
    }
    let scope_name = match scope {
        Scope::Algebra => "algebra",
        Scope::Brackets => "brackets",
        Scope::Polychronakos => "polychronakos",
        Scope::All => "all",
    };
    let mut env = ReportEnvelope::new(
        "verify",
        json!({
            "scope": scope_name,
            "param": args.param()?.as_ref().map(param_json),
            "dim": args.dim,
            "max_m": max_m,
            "tolerance": tol,
        }),
    );
    let mut algebra = Vec::new();
    let mut brackets = Vec::new();
    let mut realization = Vec::new();
    let mut checks = Vec::new();
    if matches!(scope, Scope::Algebra | Scope::All) {
        verify_algebra(&params, tol, &mut algebra, &mut checks)?;
    }
    if matches!(scope, Scope::Brackets | Scope::All) {
        verify_brackets(max_m, tol, &mut brackets, &mut checks);
    }
    if matches!(scope, Scope::Polychronakos | Scope::All) {
        verify_realization(&params, DEFAULT_REAL_DIM, tol, &mut realization, &mut checks)?;
    }
    env.results = json!({
        "algebra": algebra,
        "brackets": brackets,
        "polychronakos": realization,
    });
    env.checks = checks;

    let failed: Vec<&Check> = env.checks.iter().filter(|c| !c.passed).collect();
    let worst = env.checks.iter().map(|c| c.max_residual).fold(0.0, f64::max);
    let mut t = String::new();
    let _ = writeln!(t, "verify {scope_name}: {} checks, {} failed, worst residual {:.3e}", env.checks.len(), failed.len(), worst);
    if failed.is_empty() {
        let _ = writeln!(t, "all checks passed at tolerance {tol:e}");
    } else {
        checks_table(&failed.into_iter().cloned().collect::<Vec<_>>(), &mut t);
    }
    let status = if env.all_passed() { Status::Ok } else { Status::CheckFailed };
    Ok((env, t, status))
}

pub fn polychronakos(args: &ParamArgs, n_max: usize, tol: f64) -> Outcome {
    let param = args.require_param()?;
    let dim = args.dim_for(&param)?;
    if dim < 2 || n_max < 1 {
        return Err(CliError::Usage("--dim must be at least 2 and --n-max at least 1".into()));
    }
    let (a_minus, _) = realize_deformed(&param, dim).expect("dim checked above");
    let lowering: Vec<Complex64> = (1..dim).map(|n| a_minus.get(n - 1, n)).collect();
    let mut results = Vec::new();
    let mut checks = Vec::new();
    verify_realization(&[(param, dim)], n_max, tol, &mut results, &mut checks)?;

    let mut env = ReportEnvelope::new(
        "polychronakos",
        json!({"param": param_json(&param), "dim": dim, "n_max": n_max}),
    );
    let mut summary = results.pop().unwrap_or(Value::Null);
    summary["a_minus_superdiagonal"] = Value::Array(lowering.iter().map(|z| complex_json(*z)).collect());
    env.results = summary;
    env.checks = checks;

    let mut t = String::new();
    let _ = writeln!(t, "realization at {param}, dim {dim}");
    let _ = writeln!(t, "a- superdiagonal:");
    for (n, z) in lowering.iter().enumerate() {
        let _ = writeln!(t, "  <{}|a-|{}> = {} {} {}i", n, n + 1, format_f64(z.re), if z.im < 0.0 { '-' } else { '+' }, format_f64(z.im.abs()));
    }
    let _ = writeln!(t, "unitary (a+ = a-^dag): {}", env.results["unitary"]);
    checks_table(&env.checks, &mut t);
    let status = if env.all_passed() { Status::Ok } else { Status::InternalFault };
    Ok((env, t, status))
}
