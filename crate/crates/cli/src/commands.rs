use hamming_spectra::chiq_bounds::{self, BoundReport, GraphId};
use hamming_spectra::combinatorics::TypeVector;
use hamming_spectra::{hamming_spectrum, krawtchouk, z4_spectrum, BigInt};
use serde_json::{json, Value};

use crate::{Failure, Output};

fn dec(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

pub(crate) fn krawtchouk(n: usize, j: usize, x: Option<usize>) -> Result<Output, Failure> {
    let inputs = json!({"n": n, "j": j, "x": x});
    let mut out = Output::new(inputs, vec!["krawtchouk: alternating binomial sum"]);
    match x {
        Some(x) => {
            let v = krawtchouk::krawtchouk_eval(n, j, x)?;
            Ok(out.single_row(json!({"x": x, "value": dec(&v)})))
        }
        None => {
            out.header = strings(&["x", "value"]);
            let column: Vec<Value> = hamming_spectrum::spectrum(n, j)?
                .into_iter()
                .map(|e| {
                    out.rows.push(vec![e.w.to_string(), e.value.to_string()]);
                    json!({"x": e.w, "value": dec(&e.value)})
                })
                .collect();
            out.results.push(json!({ "column": column }));
            Ok(out)
        }
    }
}

pub(crate) fn hamming_min(n: usize, j: usize) -> Result<Output, Failure> {
    let res = hamming_spectrum::lambda_min_exact(n, j)?;
    let closed = hamming_spectrum::closed_form_min(n, j);
    let mut results = json!({
        "lambda_min": dec(&res.lambda_min),
        "argmin_w": res.argmin_w,
        "scanned": res.scanned,
        "closed_form": closed.as_ref().map(|(_, name)| *name),
    });
    if j == 4 && n >= 9 {
        let (envelope, _) = hamming_spectrum::lambda_min_j4_closed(n)?;
        results["envelope_j4"] = json!(envelope);
    }
    let out = Output::new(
        json!({"n": n, "j": j}),
        vec!["hamming: eigenvalue K_j(w) with multiplicity C(n,w)", "hamming: exhaustive scan over w"],
    );
    Ok(out.single_row(results))
}

pub(crate) fn qpoly(n: usize, j: usize, closed_form: bool) -> Result<Output, Failure> {
    let polys = krawtchouk::q_polys_by_recursion(n, j)?;
    let rec: Vec<String> = (0..=j).map(|k| polys[j].coeff(k).to_string()).collect();
    let mut provenance = vec!["qpoly: three-term recursion with c_i = i, b_i = n - i"];
    let mut results = json!({"degree": j, "coefficients": rec});
    let mut out_header = strings(&["power", "recursion"]);
    let mut closed: Vec<String> = Vec::new();
    if closed_form {
        provenance.push("qpoly: 2-separated subset closed form");
        // x^k carries L_{j-k}(j).
        closed = (0..=j)
            .map(|k| krawtchouk::q_coeff_closed_form(n, j, j - k).map(|c| c.to_string()))
            .collect::<Result<_, _>>()?;
        results["closed_form"] = json!(closed);
        results["equal"] = json!(closed == rec);
        out_header.push("closed_form".into());
    }
    let mut out = Output::new(json!({"n": n, "j": j, "closed_form": closed_form}), provenance);
    out.header = out_header;
    for (k, c) in rec.iter().enumerate() {
        let mut row = vec![k.to_string(), c.clone()];
        if closed_form {
            row.push(closed[k].clone());
        }
        out.rows.push(row);
    }
    out.results.push(results);
    Ok(out)
}

fn z4_record(t: &TypeVector, value: &BigInt, multiplicity: &BigInt) -> Value {
    json!({"type": t.parts(), "value": dec(value), "multiplicity": dec(multiplicity)})
}

pub(crate) fn z4_spectrum(r: usize, s: usize, t: Option<&[usize]>) -> Result<Output, Failure> {
    let inputs = json!({"r": r, "s": s, "type": t});
    let mut out = Output::new(inputs, vec!["z4: eigenvalue from the coefficient of the type generating function"]);
    out.header = strings(&["t0", "t1", "t2", "t3", "value", "multiplicity"]);
    let records = match t {
        Some(parts) => {
            if parts.len() != 4 {
                return Err(Failure::Usage(format!("--type needs 4 comma-separated counts, got {}", parts.len())));
            }
            let t = TypeVector::new(parts.to_vec())?;
            let value = z4_spectrum::eigenvalue_by_type(r, s, &t)?;
            let mult = hamming_spectra::combinatorics::multinomial(&t);
            vec![(t, value, mult)]
        }
        None => z4_spectrum::spectrum(r, s)?
            .into_iter()
            .map(|e| (e.t, e.value, e.multiplicity))
            .collect(),
    };
    for (t, value, mult) in &records {
        let mut row = strings(t.parts());
        row.push(value.to_string());
        row.push(mult.to_string());
        out.rows.push(row);
        out.results.push(z4_record(t, value, mult));
    }
    Ok(out)
}

pub(crate) fn z4_min(r: usize, s: usize) -> Result<Output, Failure> {
    let res = z4_spectrum::lambda_min_scan(r, s)?;
    let out = Output::new(
        json!({"r": r, "s": s}),
        vec!["z4: exhaustive scan over canonical types", "z4: -C(n;r,s,r,s)/(n-1) at (0,1,n-2,1)"],
    );
    let argmin: Vec<String> = strings(&res.argmin_types);
    Ok(out.single_row(json!({
        "lambda_min": dec(&res.lambda_min),
        "argmin_types": argmin.clone(),
        "argmin": argmin.join(" "),
        "matches_formula": res.matches_formula,
    })))
}

fn pairs(items: &[(String, f64)]) -> Value {
    Value::Array(items.iter().map(|(k, v)| json!({"name": k, "value": v})).collect())
}

fn report_json(rep: &BoundReport) -> Value {
    let graph = match rep.graph_id {
        GraphId::Hamming { n, j } => json!({"family": "hamming", "n": n, "j": j}),
        GraphId::Z4 { r, s } => json!({"family": "z4", "r": r, "s": s, "n": 2 * (r + s)}),
    };
    json!({
        "graph": rep.graph_id.to_string(),
        "graph_id": graph,
        "lambda_max": dec(&rep.lambda_max),
        "lambda_min": dec(&rep.lambda_min),
        "spectral_lb": dec(&rep.spectral_lb),
        "upper_bounds": pairs(&rep.upper_bounds),
        "asymptotic_lbs": pairs(&rep.asymptotic_lbs),
        "equality": rep.equality,
        "notes": rep.notes,
    })
}

pub(crate) fn chiq_hamming(n: usize, j: usize) -> Result<Output, Failure> {
    let rep = chiq_bounds::hamming_chiq_lb(n, j)?;
    let out = Output::new(
        json!({"family": "hamming", "n": n, "j": j}),
        vec!["chiq: spectral bound 1 - lambda_max/lambda_min", "chiq: known upper bounds for H(n,j)"],
    );
    Ok(out.single_row(report_json(&rep)))
}

pub(crate) fn chiq_z4(r: usize, s: usize) -> Result<Output, Failure> {
    let rep = chiq_bounds::z4_chiq(r, s)?;
    let out = Output::new(
        json!({"family": "z4", "r": r, "s": s}),
        vec!["chiq: spectral bound 1 - lambda_max/lambda_min", "chiq: G(r,s) embeds in the orthogonality graph, chi_q <= n"],
    );
    Ok(out.single_row(report_json(&rep)))
}

pub(crate) fn table_compare(alphas: Option<&[f64]>) -> Result<Output, Failure> {
    let grid = alphas.map(<[f64]>::to_vec).unwrap_or_else(chiq_bounds::default_alphas);
    let rows = chiq_bounds::lu_table(&grid)?;
    let mut out = Output::new(
        json!({"alphas": grid}),
        vec!["table: l = 2^h(a) / (e(1+sqrt2) sqrt(a(1-a)))^a", "table: u = 2^h(1/2 - sqrt(a(1-a)))"],
    );
    out.header = strings(&["alpha", "l", "u", "l_rate"]);
    for row in rows {
        let (l, u, lr) = (chiq_bounds::round3(row.l), chiq_bounds::round3(row.u), chiq_bounds::round3(row.l_rate));
        out.rows.push(vec![row.alpha.to_string(), format!("{l:.3}"), format!("{u:.3}"), format!("{lr:.3}")]);
        out.results.push(json!({"alpha": row.alpha, "l": l, "u": u, "l_rate": lr}));
    }
    Ok(out)
}
