//! Output formats. JSON is the envelope itself; CSV and pretty output flatten
//! the result into one table per command.

use serde_json::Value;

use crate::args::Format;

pub fn render(format: Format, envelope: &Value) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(envelope).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let (head, rows) = table(envelope);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&head).expect("in-memory write");
            for r in &rows {
                w.write_record(r).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8 input")
        }
        Format::Pretty => {
            let (head, rows) = table(envelope);
            let mut out = format!("# {}\n", envelope["command"].as_str().unwrap_or_default());
            for (k, v) in summary(envelope) {
                out.push_str(&format!("# {k} = {v}\n"));
            }
            out.push_str(&aligned(&head, &rows));
            out
        }
    }
}

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("({})", a.iter().map(text).collect::<Vec<_>>().join(",")),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn terms(ch: &Value) -> Vec<[String; 3]> {
    ch["terms"]
        .as_array()
        .map(|ts| ts.iter().map(|t| [text(&t[0]), text(&t[1]), text(&t[2])]).collect())
        .unwrap_or_default()
}

fn elements(xs: &Value) -> Vec<Vec<String>> {
    xs.as_array()
        .map(|a| a.iter().map(|e| vec![text(&e["element"]), text(&e["si_length"])]).collect())
        .unwrap_or_default()
}

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn table(env: &Value) -> (Vec<String>, Vec<Vec<String>>) {
    let r = &env["result"];
    let char_rows = |ch: &Value| terms(ch).into_iter().map(|t| t.to_vec()).collect::<Vec<_>>();
    match env["command"].as_str().unwrap_or_default() {
        "order le" => (strs(&["w", "v", "le"]), vec![vec![text(&r["w"]["element"]), text(&r["v"]["element"]), text(&r["result"])]]),
        "order covers" => {
            let rows = r["covers"]
                .as_array()
                .map(|a| {
                    a.iter()
                        .map(|c| {
                            vec![
                                text(&c["element"]),
                                text(&c["si_length"]),
                                text(&c["root"]["finite"]),
                                text(&c["root"]["delta"]),
                            ]
                        })
                        .collect()
                })
                .unwrap_or_default();
            (strs(&["element", "si_length", "root", "delta"]), rows)
        }
        "order interval" => (strs(&["element", "si_length"]), elements(&r["elements"])),
        "char weyl" | "char gweyl" | "char demazure" => (strs(&["q", "weight", "coeff"]), char_rows(&r["character"])),
        "h0" => (strs(&["q", "weight", "coeff"]), char_rows(&r["character"])),
        "pieri" => {
            let mut rows = Vec::new();
            for c in r["coeffs"].as_array().into_iter().flatten() {
                for t in terms(&c["coeff"]) {
                    let mut row = vec![text(&c["element"]), text(&c["si_length"])];
                    row.extend(t);
                    rows.push(row);
                }
            }
            (strs(&["u", "si_length", "q", "weight", "coeff"]), rows)
        }
        "qmap validate" => (
            strs(&["valid", "beta", "reason"]),
            vec![vec![text(&r["valid"]), text(&r["beta"]), text(&r["reason"])]],
        ),
        "qmap defect" => {
            let d = &r["divisor"];
            let mut rows: Vec<Vec<String>> = d["finite"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|p| vec![text(&p["factor"]), text(&p["multiplicity"])])
                .collect();
            rows.push(vec!["inf".into(), text(&d["at_infinity"])]);
            (strs(&["factor", "multiplicity"]), rows)
        }
        "qmap eval" => {
            let rows = r["coords"]
                .as_array()
                .into_iter()
                .flatten()
                .enumerate()
                .map(|(i, c)| vec![(i + 1).to_string(), text(c)])
                .collect();
            (strs(&["component", "coords"]), rows)
        }
        _ => (strs(&["dim"]), vec![vec![text(&r["dim"])]]),
    }
}

/// Scalar facts that do not fit the table, for pretty output.
fn summary(env: &Value) -> Vec<(String, String)> {
    let r = &env["result"];
    let mut out: Vec<(String, String)> =
        env["params"].as_object().into_iter().flatten().map(|(k, v)| (k.clone(), text(v))).collect();
    let keys = [
        "dim",
        "bound",
        "radius",
        "depth_clipped",
        "window_clipped",
        "verified_equations",
        "verify_mu",
        "beta",
        "saturated_degrees",
    ];
    for k in keys {
        if let Some(v) = r.get(k) {
            out.push((k.to_string(), text(v)));
        }
    }
    if let Some(b) = r.get("balance") {
        out.push(("balance".into(), format!("{} = {}: {}", text(&b["lhs"]), text(&b["rhs"]), text(&b["holds"]))));
    }
    if let Some(s) = r.get("schubert") {
        out.push(("schubert member".into(), text(&s["member"])));
    }
    out
}

fn aligned(head: &[String], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = head.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let s: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        s.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(head);
    out.push_str(&line(&width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
    for r in rows {
        out.push_str(&line(r));
    }
    out
}
