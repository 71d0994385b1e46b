use std::fmt::Write as _;

use coxsmooth::bruhat::{poincare as brute_poincare, relative_poincare};
use coxsmooth::census::{figure3_table, palindromic_census, phi_series, recurrence_pairs, CensusMode, Phi_series};
use coxsmooth::coxeter::triangle_scan;
use coxsmooth::smoothness::{fast_poincare, grassmannian_factorizations, separable_factorization, FactorizationChain};
use coxsmooth::algebra::palindromic_defect;
use coxsmooth::{fixtures, Bond, CoxError, CoxeterSystem, GroupElement, QPolynomial};
use serde_json::{json, Value};

use crate::{CmdResult, Failure, Report};

/// `@NAME` selects a built-in group, anything else is a file path.
pub fn load_group(spec: &str) -> Result<CoxeterSystem, Failure> {
    let matrix = match spec.strip_prefix('@') {
        Some(name) => fixtures::builtin(name)?,
        None => {
            let text = std::fs::read_to_string(spec)
                .map_err(|e| Failure::User(format!("cannot read group file `{spec}`: {e}")))?;
            coxsmooth::CoxeterMatrix::from_json(&text)?
        }
    };
    Ok(CoxeterSystem::new(matrix))
}

pub fn parse_bond(text: &str) -> Result<Bond, Failure> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("inf") {
        return Ok(Bond::Infinite);
    }
    match t.parse::<u32>() {
        Ok(m) if m >= 2 => Ok(Bond::Finite(m)),
        _ => Err(Failure::User(format!("bad bond label `{text}` (expected an integer >= 2 or `inf`)"))),
    }
}

/// `A..B` (inclusive), `A-B`, a comma list, or a single value.
pub fn parse_range(text: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::User(format!("bad range `{text}`"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let t = text.trim();
    let bounds = t.split_once("..").or_else(|| t.split_once('-'));
    let values: Vec<usize> = if let Some((a, b)) = bounds {
        let b = b.strip_prefix('=').unwrap_or(b);
        (num(a)?..=num(b)?).collect()
    } else {
        t.split(',').map(num).collect::<Result<_, _>>()?
    };
    if values.is_empty() {
        return Err(bad());
    }
    Ok(values)
}

fn names(sys: &CoxeterSystem, gens: &[u8]) -> Vec<String> {
    gens.iter().map(|&g| sys.generator_name(g).to_owned()).collect()
}

fn product_form(chain: &FactorizationChain) -> String {
    chain.factors.iter().map(|f| format!("({})", f.closed_form)).collect()
}

pub fn group_check(group: &str) -> CmdResult {
    let sys = load_group(group)?;
    let report = triangle_scan(sys.matrix());
    let bound = report.palindromic_length_bound(sys.rank());
    let triple = |w: &[u8; 3]| names(&sys, w);
    let json = json!({
        "group": sys.name(),
        "generators": sys.matrix().generators(),
        "avoids_tri": report.avoids_tri,
        "tri_witnesses": report.tri_witnesses.iter().map(triple).collect::<Vec<_>>(),
        "contains_33c_finite": report.contains_33c_finite,
        "witness_33c": report.witness_33c.as_ref().map(triple),
        "contains_333": report.contains_333,
        "witness_333": report.witness_333.as_ref().map(triple),
        "has_infinite_bond": report.has_infinite_bond,
        "max_finite_bond": report.max_finite_bond,
        "palindromic_set_finite": report.palindromic_set_finite,
        "palindromic_length_bound": bound,
    });
    let mut text = String::new();
    let _ = writeln!(text, "group {} ({} generators)", sys.name(), sys.rank());
    if report.avoids_tri {
        let _ = writeln!(text, "avoids Tri: yes");
    } else {
        let ws: Vec<String> = report.tri_witnesses.iter().map(|w| triple(w).join(",")).collect();
        let _ = writeln!(text, "avoids Tri: no, witnesses {{{}}}", ws.join("} {"));
    }
    let flag = |b: bool, w: &Option<[u8; 3]>| match (b, w) {
        (true, Some(w)) => format!("yes ({})", triple(w).join(",")),
        (true, None) => "yes".to_owned(),
        _ => "no".to_owned(),
    };
    let _ = writeln!(text, "contains (3,3,c), 3<c<inf: {}", flag(report.contains_33c_finite, &report.witness_33c));
    let _ = writeln!(text, "contains (3,3,3): {}", flag(report.contains_333, &report.witness_333));
    let _ = writeln!(text, "infinite bond: {}", if report.has_infinite_bond { "yes" } else { "no" });
    let verdict = match (report.palindromic_set_finite, bound) {
        (Some(true), Some(b)) => format!("finite (every palindromic element has length < {b})"),
        (Some(true), None) => "finite".to_owned(),
        (Some(false), _) => "infinite".to_owned(),
        (None, _) => "not decided (group contains a Tri pattern)".to_owned(),
    };
    let _ = writeln!(text, "palindromic set: {verdict}");
    Ok(Report::ok(json, text))
}

/// Factored evaluation when the group and element allow it.
fn try_fast(sys: &CoxeterSystem, w: &GroupElement) -> Result<Option<(QPolynomial, FactorizationChain)>, Failure> {
    match fast_poincare(sys, w) {
        Ok(r) => Ok(Some(r)),
        Err(CoxError::Precondition(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn poincare(group: &str, word: &str, relative: Option<&str>, fast: bool, verify: bool) -> CmdResult {
    let sys = load_group(group)?;
    let w = sys.parse_element(word)?;
    let canonical = sys.format_element(&w);

    if let Some(j_text) = relative {
        let j = sys.parse_genset(j_text)?;
        let p = relative_poincare(&sys, &w, j)?;
        let json = json!({
            "group": sys.name(),
            "word": canonical,
            "length": w.length(),
            "relative": sys.format_genset(j),
            "poincare": p,
        });
        let text = format!(
            "element {canonical} (length {})\nP^J with J = {{{}}}: {p}\n",
            w.length(),
            sys.format_genset(j).join(",")
        );
        return Ok(Report::ok(json, text));
    }

    let (p, chain, verified) = if fast {
        let (p, chain) = fast_poincare(&sys, &w)?;
        let verified = if verify {
            let brute = brute_poincare(&sys, &w)?;
            if brute != p {
                return Err(Failure::Internal(format!(
                    "factored polynomial {p} differs from the interval polynomial {brute}"
                )));
            }
            Some(true)
        } else {
            None
        };
        (p, Some(chain), verified)
    } else {
        let p = brute_poincare(&sys, &w)?;
        let fast = try_fast(&sys, &w)?;
        if let Some((fp, _)) = &fast {
            if *fp != p {
                return Err(Failure::Internal(format!(
                    "factored polynomial {fp} differs from the interval polynomial {p}"
                )));
            }
        }
        (p, fast.map(|(_, c)| c), None)
    };
    let defect = palindromic_defect(&p)?;
    let mut json = json!({
        "group": sys.name(),
        "word": canonical,
        "length": w.length(),
        "poincare": p,
        "defect": defect,
        "palindromic": defect.is_palindromic(),
        "two_palindromic": defect.is_k_palindromic(2),
    });
    let mut text = format!("element {canonical} (length {})\nP_w = {p}\n", w.length());
    let _ = writeln!(
        text,
        "{}",
        if defect.is_palindromic() {
            "palindromic".to_owned()
        } else {
            format!("defect {defect} ({defect}-palindromic, not {}-palindromic)", defect_plus_one(defect))
        }
    );
    if let Some(chain) = &chain {
        let _ = writeln!(text, "P_w = {}", product_form(chain));
        json["product_form"] = Value::from(product_form(chain));
        json["factorization"] = chain.to_json(&sys);
    }
    if let Some(v) = verified {
        json["verified"] = Value::from(v);
        let _ = writeln!(text, "verified against the interval");
    }
    Ok(Report::ok(json, text))
}

fn defect_plus_one(d: coxsmooth::Defect) -> String {
    match d {
        coxsmooth::Defect::At(i) => (i + 1).to_string(),
        coxsmooth::Defect::Palindromic => "inf".to_owned(),
    }
}

pub fn factorize(group: &str, word: &str) -> CmdResult {
    let sys = load_group(group)?;
    let w = sys.parse_element(word)?;
    let canonical = sys.format_element(&w);
    let steps: Vec<Value> = grassmannian_factorizations(&sys, &w)
        .iter()
        .map(|s| {
            json!({
                "J": sys.format_genset(s.j),
                "added": sys.generator_name(s.added),
                "u_word": sys.format_element(&s.u),
                "v_word": sys.format_element(&s.v),
            })
        })
        .collect();
    let fast = try_fast(&sys, &w)?;
    let separable = if sys.matrix().has_no_commuting_pairs() {
        match separable_factorization(&sys, &w) {
            Ok(f) => Some(f),
            Err(CoxError::Precondition(_)) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };

    let mut text = format!("element {canonical} (length {})\n", w.length());
    let _ = writeln!(text, "Grassmannian steps:");
    for s in &steps {
        let _ = writeln!(
            text,
            "  J = {{{}}}: u = {}, v = {}",
            s["J"].as_array().map(|a| a.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(",")).unwrap_or_default(),
            s["u_word"].as_str().unwrap_or_default(),
            s["v_word"].as_str().unwrap_or_default()
        );
    }
    if let Some((_, chain)) = &fast {
        let _ = writeln!(text, "complete chain:");
        for f in &chain.factors {
            let _ = writeln!(
                text,
                "  v = {:<24} {:<8} P^J = {}",
                sys.format_element(&f.step.v),
                f.class.tag(),
                f.closed_form
            );
        }
        let _ = writeln!(text, "P_w = {} = {}", product_form(chain), chain.closed_form);
    } else {
        let _ = writeln!(text, "no closed-form chain (needs a Tri-avoiding group and a 2-palindromic element)");
    }
    if let Some(f) = &separable {
        let parts: Vec<String> = f.iter().map(|x| sys.format_element(x)).collect();
        let _ = writeln!(text, "separable factors: ({})", parts.join(" | "));
    }
    let json = json!({
        "group": sys.name(),
        "word": canonical,
        "length": w.length(),
        "grassmannian_steps": steps,
        "chain": fast.as_ref().map(|(_, c)| c.to_json(&sys)),
        "separable": separable.as_ref().map(|f| f.iter().map(|x| sys.format_element(x)).collect::<Vec<_>>()),
    });
    Ok(Report::ok(json, text))
}

pub fn census(group: &str, max_length: usize, mode: CensusMode, list: bool) -> CmdResult {
    let sys = load_group(group)?;
    let report = palindromic_census(&sys, max_length, mode, list)?;
    let json = serde_json::to_value(&report).map_err(|e| Failure::Internal(e.to_string()))?;
    let label = match mode {
        CensusMode::Palindromic => "palindromic",
        CensusMode::TwoPalindromic => "2-palindromic",
    };
    let mut text = format!("{label} elements of {} up to length {max_length}\n", report.system);
    for (k, c) in report.counts_by_length.iter().enumerate() {
        let _ = writeln!(text, "  length {k:>3}: {c}");
    }
    let _ = writeln!(text, "total: {}", report.total);
    if let Some(els) = &report.elements {
        for e in els {
            let _ = writeln!(text, "{e}");
        }
    }
    Ok(Report::ok(json, text))
}

pub fn series(m: &str, q_order: usize, t_order: usize) -> CmdResult {
    let bond = parse_bond(m)?;
    if q_order == 0 || t_order == 0 {
        return Err(Failure::User("series orders must be positive".into()));
    }
    let big = Phi_series(bond, q_order, t_order)?;
    let egf: Vec<QPolynomial> = (0..t_order)
        .map(|n| {
            big.egf_coefficient(n)
                .map(QPolynomial::from_coeffs)
                .ok_or_else(|| Failure::Internal(format!("non-integral coefficient at t^{n}")))
        })
        .collect::<Result<_, _>>()?;
    let mut json = json!({
        "m": bond.to_string(),
        "q_order": q_order,
        "t_order": t_order,
        "Phi_egf": egf.iter().enumerate().map(|(n, c)| json!({"n": n, "coefficients": c})).collect::<Vec<_>>(),
    });
    if bond != Bond::Finite(2) {
        json["phi"] = serde_json::to_value(phi_series(bond, q_order, t_order)?)
            .map_err(|e| Failure::Internal(e.to_string()))?;
    }
    if let Bond::Finite(k) = bond {
        if k >= 3 && t_order > 1 {
            json["recurrence"] = serde_json::to_value(recurrence_pairs(k, t_order - 1, q_order)?)
                .map_err(|e| Failure::Internal(e.to_string()))?;
        }
    }
    let mut text = format!("n! [t^n] Phi_{bond}(q, t), through q^{}\n", q_order - 1);
    for (n, p) in egf.iter().enumerate() {
        let _ = writeln!(text, "  n = {n}: {p}");
    }
    Ok(Report::ok(json, text))
}

pub fn figure3(m_range: &str, n_range: &str, csv: bool) -> CmdResult {
    let ms: Vec<u32> = parse_range(m_range)?
        .into_iter()
        .map(|m| u32::try_from(m).map_err(|_| Failure::User(format!("m = {m} is too large"))))
        .collect::<Result<_, _>>()?;
    let ns = parse_range(n_range)?;
    let table = figure3_table(&ms, &ns)?;
    let json = serde_json::to_value(&table).map_err(|e| Failure::Internal(e.to_string()))?;
    let text = if csv { table.to_csv() } else { table.to_aligned() };
    Ok(Report::ok(json, text))
}
