//! Plain-text coefficient tables.

use skein_core::annulus::omega;
use skein_core::kom::projector;
use skein_core::tl::{jones_wenzl, reduced_words, Matching};
use skein_core::Error;

use crate::config::TableKind;

/// `id`, or a reduced word such as `e1e2`.
pub fn matching_label(m: &Matching) -> String {
    if m.is_identity() {
        return "id".into();
    }
    let words = reduced_words(m.strands());
    let mut gens = Vec::new();
    let mut cur = *m;
    while let Some((parent, i)) = words.get(&cur) {
        gens.push(*i);
        cur = *parent;
    }
    gens.iter().rev().map(|i| format!("e{i}")).collect()
}

fn render(header: [&str; 2], rows: Vec<(String, String)>) -> String {
    let w = rows.iter().map(|r| r.0.chars().count()).chain([header[0].len()]).max().unwrap_or(0);
    let mut out = format!("{:<w$}  {}\n", header[0], header[1]);
    for (a, b) in rows {
        let pad = w - a.chars().count();
        out.push_str(&format!("{a}{}  {b}\n", " ".repeat(pad)));
    }
    out
}

fn sorted_rows(mut rows: Vec<(Matching, String)>) -> Vec<(String, String)> {
    let mut labelled: Vec<(String, String)> = rows.drain(..).map(|(m, c)| (matching_label(&m), c)).collect();
    labelled.sort_by(|a, b| (a.0 != "id", a.0.len(), &a.0).cmp(&(b.0 != "id", b.0.len(), &b.0)));
    labelled
}

/// `param` is the strand count for projector and euler tables and the
/// level for omega.
pub fn print_tables(kind: TableKind, param: usize, qmax: i32) -> Result<String, Error> {
    Ok(match kind {
        TableKind::Projector => {
            let p = jones_wenzl(param)?;
            let rows = p.terms().map(|(m, c)| (*m, c.to_string())).collect();
            format!("p_{param}\n{}", render(["diagram", "coefficient"], sorted_rows(rows)))
        }
        TableKind::Omega => {
            let w = omega(param as u32);
            let rows = w.terms().map(|(k, c)| (format!("phi_{k}"), format!("[{}] = {c}", k + 1))).collect();
            format!("omega_{param}\n{}", render(["basis", "coefficient"], rows))
        }
        TableKind::Euler => {
            let chi = projector(param)?.euler_char(qmax)?;
            let rows = chi.terms.iter().map(|(m, s)| (*m, s.to_string())).collect();
            format!("chi(P_{param}) qmax={qmax}\n{}", render(["diagram", "series"], sorted_rows(rows)))
        }
    })
}
