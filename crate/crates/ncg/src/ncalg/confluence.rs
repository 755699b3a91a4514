use super::{AlgElem, Presentation};
use crate::report::{run_check, Outcome, Report};
use crate::scalar::Scalar;

fn all_words(n: usize, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * n);
        for w in &out {
            for g in 0..n {
                let mut v = w.clone();
                v.push(g as u8);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Every word of length ≤ `max_len` with two or more one-step rewrites must
/// have all of them reduce to the same normal form.
pub(super) fn check(p: &Presentation, max_len: usize) -> Report {
    let mut report = Report::new("presentation");
    let rec = run_check(
        "local-confluence",
        &format!("all overlaps up to length {} joinable", max_len),
        false,
        || {
            let mut failures = Vec::new();
            let mut ambiguous = 0usize;
            for len in 2..=max_len {
                for w in all_words(p.gens.len(), len) {
                    let rewrites = p.all_rewrites(&w);
                    if rewrites.len() < 2 {
                        continue;
                    }
                    ambiguous += 1;
                    let nfs = rewrites
                        .iter()
                        .map(|r| p.normal_form(r))
                        .collect::<Result<Vec<_>, _>>()?;
                    if let Some(bad) = nfs.iter().find(|x| **x != nfs[0]) {
                        failures.push(format!(
                            "`{}` reduces to both `{}` and `{}`",
                            p.render_word(&w),
                            p.render(&nfs[0]),
                            p.render(bad)
                        ));
                    }
                }
            }
            if failures.is_empty() {
                Ok(Outcome::Holds(Some(format!("{} ambiguous words joinable", ambiguous))))
            } else {
                Ok(Outcome::Violated(failures.join("; ")))
            }
        },
    );
    report.push(rec);
    report
}

/// Structural checks on a presentation: rule grades, star involution and
/// antihomomorphism, star compatibility of each rule, unit relations, and
/// local confluence.
pub fn check_presentation(p: &Presentation, max_len: usize) -> Report {
    let mut report = Report::new("presentation");
    report.push(run_check("rule-grades", "both sides of every rule have equal grade", false, || {
        let bad = p.rules.iter().find_map(|r| {
            let g = p.word_grade(&r.lhs);
            r.rhs
                .terms()
                .find(|(w, _)| p.word_grade(w) != g)
                .map(|(w, _)| format!("{} -> ... {}", p.render_word(&r.lhs), p.render_word(w)))
        });
        Ok(Outcome::from_first(bad))
    }));
    if p.has_star() {
        report.push(run_check("star-involution", "star(star(g)) = g on generators", false, || {
            for g in 0..p.gens.len() {
                let x = AlgElem::term(vec![g as u8], Scalar::one());
                let back = p.star_elem(&p.star_elem(&x)?)?;
                if back != x {
                    return Ok(Outcome::Violated(format!("star(star({})) = {}", p.gens[g].name, p.render(&back))));
                }
            }
            Ok(Outcome::holds())
        }));
        report.push(run_check(
            "star-rules",
            "star maps every rule to a valid relation",
            false,
            || {
                for r in &p.rules {
                    let l = p.star_elem(&AlgElem::term(r.lhs.clone(), Scalar::one()))?;
                    let rr = p.star_elem(&r.rhs)?;
                    if l != rr {
                        return Ok(Outcome::Violated(format!(
                            "star({}) = {} but star(rhs) = {}",
                            p.render_word(&r.lhs),
                            p.render(&l),
                            p.render(&rr)
                        )));
                    }
                }
                for b in &p.bridges {
                    let mut w = vec![b.left];
                    w.push(b.right);
                    let l = p.star_elem(&AlgElem::term(w.clone(), Scalar::one()))?;
                    let rr = p.star_elem(&b.rhs)?;
                    if l != rr {
                        return Ok(Outcome::Violated(format!(
                            "star({}) = {} but star(rhs) = {}",
                            p.render_word(&w),
                            p.render(&l),
                            p.render(&rr)
                        )));
                    }
                }
                Ok(Outcome::holds())
            },
        ));
        report.push(run_check(
            "star-antihomomorphism",
            "star(xy) = star(y) star(x) on generator pairs and triples",
            false,
            || {
                let n = p.gens.len();
                for w in all_words(n, 2).into_iter().chain(all_words(n, 3)) {
                    let x = AlgElem::term(w[..1].to_vec(), Scalar::one());
                    let y = p.normal_form_word(&w[1..])?;
                    let lhs = p.star_elem(&p.multiply(&x, &y)?)?;
                    let rhs = p.multiply(&p.star_elem(&y)?, &p.star_elem(&x)?)?;
                    if lhs != rhs {
                        return Ok(Outcome::Violated(format!(
                            "word {}: {} vs {}",
                            p.render_word(&w),
                            p.render(&lhs),
                            p.render(&rhs)
                        )));
                    }
                }
                Ok(Outcome::holds())
            },
        ));
    }
    report.push(run_check("unit-relations", "declared unit relations reduce to 1", false, || {
        let bad = p
            .units
            .iter()
            .find(|(_, v)| *v != AlgElem::one())
            .map(|(t, v)| format!("`{}` reduces to `{}`", t, p.render(v)));
        Ok(Outcome::from_first(bad))
    }));
    report.extend(check(p, max_len));
    report
}
