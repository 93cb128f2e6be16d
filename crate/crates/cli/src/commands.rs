//! One function per subcommand. Each returns a structured document plus a
//! human-readable rendering.

use serde_json::{json, Value};

use ore_nakayama::endo::Order;
use ore_nakayama::expr::{format_ore, format_poly, format_ratfunc, format_tuple};
use ore_nakayama::homology::{KoszulComplex, LiftCase};
use ore_nakayama::invariants::{check_j_surjectivity, eigenspace, find_invariants, TargetOutcome, TwistedAlgebra};
use ore_nakayama::nakayama::{
    compute_nakayama, is_calabi_yau, kappa_drift, nakayama_order, verify_automorphism, CyFailure, KappaDrift,
};
use ore_nakayama::ore::OrePoly;
use ore_nakayama::poly::Polynomial;

use crate::problem::{Problem, ProblemSpec};

pub const DEFAULT_MAX_DEGREE: u32 = 3;
pub const DEFAULT_MAX_XDEG: usize = 2;

pub struct Output {
    pub json: Value,
    pub text: String,
    /// False when a verification or consistency check failed.
    pub ok: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, ok: true }
    }
}

type CmdResult = Result<Output, String>;

fn poly(p: &Problem, f: &Polynomial) -> String {
    format_poly(f, &p.names)
}

fn ore(p: &Problem, a: &OrePoly) -> String {
    format_ore(a, &p.names, "x")
}

fn order_str(o: Order) -> String {
    match o {
        Order::Finite(r) => r.to_string(),
        Order::Unknown => "unknown".into(),
    }
}

pub fn kappa(p: &Problem) -> CmdResult {
    let k = p.delta.kappa().map_err(|e| e.to_string())?;
    let s = format_ratfunc(&k, &p.names);
    let in_r = k.is_polynomial();
    Ok(Output::ok(
        json!({ "kappa": s, "in_r": in_r }),
        format!("κ = {s}\nκ ∈ R: {}", if in_r { "yes" } else { "no" }),
    ))
}

pub fn jacobian(input: &ProblemSpec) -> CmdResult {
    let sigma = input.sigma_endo()?;
    let j = sigma.jacobian_det().map_err(|e| e.to_string())?;
    Ok(Output::ok(json!({ "jacobian": j.to_string() }), format!("J = {j}")))
}

pub fn nakayama(p: &Problem) -> CmdResult {
    let nu = compute_nakayama(&p.delta).map_err(|e| e.to_string())?;
    let ext = p.ext();
    let report = verify_automorphism(&nu, &ext);
    let on_r: Vec<String> = nu.on_r().forward().images().iter().map(|f| poly(p, f)).collect();
    let nu_x = ore(p, &nu.image_of_x());
    let failing: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| p.names[c.generator - 1].as_str())
        .collect();
    let text = format!(
        "case: {}\nν|_R = {}\nν(x) = {}\nrelations: {}",
        nu.case().name(),
        format_tuple(nu.on_r().forward().images(), &p.names),
        nu_x,
        if failing.is_empty() {
            "all pass".to_string()
        } else {
            format!("FAIL at {}", failing.join(", "))
        }
    );
    Ok(Output {
        json: json!({
            "case": nu.case().name(),
            "nu_on_r": on_r,
            "lambda": nu.lambda().to_string(),
            "b": poly(p, nu.b()),
            "nu_x": nu_x,
            "relations_verified": report.passed(),
        }),
        text,
        ok: report.passed(),
    })
}

pub fn check_cy(p: &Problem) -> CmdResult {
    let verdict = is_calabi_yau(&p.delta);
    let reason = match &verdict.failure {
        None => Value::Null,
        Some(CyFailure::SigmaNotIdentity) => json!("σ ≠ id"),
        Some(CyFailure::NonzeroDivergence(d)) => json!(format!("∇·X_δ = {} ≠ 0", poly(p, d))),
    };
    let text = match &verdict.failure {
        Some(CyFailure::NonzeroDivergence(d)) => format!("Calabi–Yau: no (∇·X_δ = {} ≠ 0)", poly(p, d)),
        _ => verdict.to_string(),
    };
    Ok(Output::ok(
        json!({ "calabi_yau": verdict.is_calabi_yau(), "reason": reason }),
        text,
    ))
}

pub fn order(p: &Problem) -> CmdResult {
    let bound = p.order_bound();
    let nu = compute_nakayama(&p.delta).map_err(|e| e.to_string())?;
    let sigma_order = p.sigma.order(bound);
    let nu_order = nakayama_order(&nu, &p.ext(), bound);
    let consistent = match (sigma_order, nu_order) {
        (Order::Finite(a), Order::Finite(b)) => a == b,
        _ => true,
    };
    Ok(Output {
        json: json!({
            "sigma_order": order_str(sigma_order),
            "nu_order": order_str(nu_order),
            "bound": bound,
            "consistent": consistent,
        }),
        text: format!("order(σ) = {sigma_order}\norder(ν) = {nu_order}\n(searched up to {bound})"),
        ok: consistent,
    })
}

pub fn kappa_drift_cmd(p: &Problem, r: i32) -> CmdResult {
    let k = p.delta.kappa().map_err(|e| e.to_string())?;
    let drift = kappa_drift(&p.sigma, &k, r).map_err(|e| e.to_string())?;
    let (s, is_poly) = match &drift {
        KappaDrift::Polynomial(f) => (poly(p, f), true),
        KappaDrift::Violation(c) => (format_ratfunc(c, &p.names), false),
    };
    let text = if is_poly {
        format!("σ_q^{r}(κ) - J^{}κ = {s}", -r)
    } else {
        format!("VIOLATION: σ_q^{r}(κ) - J^{}κ = {s} is not a polynomial", -r)
    };
    Ok(Output {
        json: json!({ "r": r, "drift": s, "polynomial": is_poly }),
        text,
        ok: is_poly,
    })
}

pub fn verify_resolution(p: &Problem, case: LiftCase) -> CmdResult {
    let k = KoszulComplex::new(p.ext(), case).map_err(|e| e.to_string())?;
    let report = k.verify();
    let one_based = |t: &Vec<usize>| t.iter().map(|i| i + 1).collect::<Vec<_>>();
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "identity": c.identity.to_string(),
                "degree": c.degree,
                "passed": c.passed(),
                "failures": c.failures.iter().map(one_based).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut text = format!("{} lifting, n = {}\n", case.name(), p.nvars());
    for c in &report.checks {
        text.push_str(&format!(
            "{:<20} p = {}: {}\n",
            c.identity.to_string(),
            c.degree,
            if c.passed() { "pass" } else { "FAIL" }
        ));
    }
    text.push_str(if report.passed() { "all identities hold" } else { "verification FAILED" });
    Ok(Output {
        json: json!({ "case": case.name(), "checks": checks, "passed": report.passed() }),
        text,
        ok: report.passed(),
    })
}

pub fn eigenspaces(p: &Problem, power: u32, max_degree: u32) -> CmdResult {
    let tw = TwistedAlgebra::new(p.sigma.clone());
    let lambda = tw.eigenvalue(power);
    let b = eigenspace(&p.sigma, &lambda, max_degree);
    let basis: Vec<String> = b.basis.iter().map(|f| poly(p, f)).collect();
    let text = format!(
        "Λ_{{J^{power}}} with J^{power} = {lambda}, degree <= {max_degree}: {{{}}}",
        basis.join(", ")
    );
    Ok(Output::ok(
        json!({
            "power": power,
            "eigenvalue": lambda.to_string(),
            "max_degree": max_degree,
            "basis": basis,
        }),
        text,
    ))
}

pub fn invariants(p: &Problem, max_xdeg: usize, max_degree: u32) -> CmdResult {
    let ext = p.ext();
    let nu = compute_nakayama(&p.delta).map_err(|e| e.to_string())?;
    let inv = find_invariants(&ext, &nu, max_xdeg, max_degree);
    let mut items = Vec::new();
    let mut text = format!("E^G up to x-degree {max_xdeg}, coefficient degree {max_degree}: {} basis elements\n", inv.len());
    for e in &inv {
        let shifted = e
            .shifted
            .as_ref()
            .map(|g| g.iter().map(|c| format_ratfunc(c, &p.names)).collect::<Vec<_>>());
        let el = ore(p, &e.element);
        text.push_str(&format!("  [{}] {}", e.level, el));
        if let Some(g) = &shifted {
            text.push_str(&format!("   (x+κ)-coefficients: ({})", g.join(", ")));
        }
        text.push('\n');
        items.push(json!({ "element": el, "level": e.level, "shifted": shifted }));
    }
    Ok(Output::ok(
        json!({ "max_xdeg": max_xdeg, "max_degree": max_degree, "invariants": items }),
        text.trim_end().to_string(),
    ))
}

pub fn check_gr(p: &Problem, level: usize, max_degree: u32) -> CmdResult {
    let ext = p.ext();
    let nu = compute_nakayama(&p.delta).map_err(|e| e.to_string())?;
    let rep = check_j_surjectivity(&ext, &nu, level, max_degree).map_err(|e| e.to_string())?;
    let mut targets = Vec::new();
    let mut text = format!(
        "level {level}, targets of degree <= {max_degree}, lower coefficients of degree <= {}\n",
        rep.lower_degree_bound
    );
    for t in &rep.targets {
        let target = poly(p, &t.target);
        let witness = match &t.outcome {
            TargetOutcome::Witness(w) => Some(ore(p, w)),
            TargetOutcome::NoSolution => None,
        };
        text.push_str(&match &witness {
            Some(w) => format!("  {target}: witness {w}\n"),
            None => format!("  {target}: no solution within bounds\n"),
        });
        targets.push(json!({ "target": target, "witness": witness }));
    }
    text.push_str(if rep.all_witnessed() {
        "every target is in the image of j"
    } else {
        "some targets are not in the image of j (within bounds)"
    });
    Ok(Output::ok(
        json!({
            "level": level,
            "max_degree": max_degree,
            "lower_degree_bound": rep.lower_degree_bound,
            "targets": targets,
            "all_witnessed": rep.all_witnessed(),
        }),
        text,
    ))
}
