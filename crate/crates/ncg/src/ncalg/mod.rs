//! Finitely presented graded *-algebras with a rewriting engine for normal
//! forms, plus the presentation and expression grammar.

mod confluence;
mod elem;
mod parse;

pub use elem::{AlgElem, Word};
pub use confluence::check_presentation;
pub use parse::caret;

use crate::scalar::Scalar;
use parse::{ExprContext, Parser};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgError {
    #[error("syntax error at offset {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("unknown generator `{name}` at offset {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("grade mismatch: {0}")]
    GradeMismatch(String),
    #[error("inconsistent star table: {0}")]
    StarInconsistent(String),
    #[error("rewrite budget of {0} rule applications exceeded")]
    NonTerminating(u64),
    #[error("invalid presentation: {0}")]
    Invalid(String),
}

impl AlgError {
    /// Offset into the parsed text, for syntax-type errors.
    pub fn position(&self) -> Option<usize> {
        match self {
            AlgError::Syntax { pos, .. } | AlgError::UnknownGenerator { pos, .. } => Some(*pos),
            _ => None,
        }
    }
}

/// Default bound on rule applications per normal-form computation.
pub const DEFAULT_REWRITE_BUDGET: u64 = 1_000_000;

fn budget_from_env() -> u64 {
    std::env::var("NCG_REWRITE_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_REWRITE_BUDGET)
}

/// Operations shared by presented algebras and the dedicated matrix algebra.
pub trait StarAlgebra: Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Scalar, x: &Self::Elem) -> crate::Result<Self::Elem>;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> crate::Result<Self::Elem>;
    fn star(&self, x: &Self::Elem) -> crate::Result<Self::Elem>;
    /// Homogeneous parts, ascending by grade; zero parts omitted.
    fn grade_components(&self, x: &Self::Elem) -> Vec<(i32, Self::Elem)>;
    fn render(&self, x: &Self::Elem) -> String;
    /// The value used for `s = q^(1/2)`; a constant in specialized models.
    fn s_value(&self) -> Scalar;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    fn q_pow(&self, k: i64) -> Scalar {
        let s = self.s_value();
        if s == Scalar::s() {
            Scalar::q_pow(k)
        } else {
            s.pow(2 * k).expect("s is nonzero")
        }
    }

    fn mul3(&self, x: &Self::Elem, y: &Self::Elem, z: &Self::Elem) -> crate::Result<Self::Elem> {
        self.mul(&self.mul(x, y)?, z)
    }

    /// Word expansion for algebras presented by generators; `None` otherwise.
    fn word_terms(&self, _x: &Self::Elem) -> Option<Vec<(Word, Scalar)>> {
        None
    }

    /// The element represented by a word in the generators.
    fn word_elem(&self, _w: &[u8]) -> Option<Self::Elem> {
        None
    }

    /// Grade of a homogeneous element (`None` for zero or mixed elements).
    fn grade_of(&self, x: &Self::Elem) -> Option<i32> {
        let parts = self.grade_components(x);
        if parts.len() == 1 {
            Some(parts[0].0)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub name: String,
    pub grade: i32,
}

#[derive(Clone, Debug)]
struct Rule {
    lhs: Word,
    rhs: AlgElem,
}

/// `left X right -> (Π λ_x⁻¹) · rhs · X` for `X` a word in `through`, where
/// `right x -> λ_x x right` are rules of the presentation.
#[derive(Clone, Debug)]
struct Bridge {
    left: u8,
    through: Vec<u8>,
    lambda_inv: HashMap<u8, Scalar>,
    right: u8,
    rhs: AlgElem,
}

/// A presented graded *-algebra over ℚ(i)(s).
pub struct Presentation {
    gens: Vec<Generator>,
    rules: Vec<Rule>,
    bridges: Vec<Bridge>,
    by_first: Vec<Vec<usize>>,
    star_table: Vec<AlgElem>,
    units: Vec<(String, AlgElem)>,
    s: Scalar,
    budget: u64,
    source: String,
    cache: RwLock<HashMap<Word, AlgElem>>,
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("generators", &self.gens)
            .field("rules", &self.rules.len())
            .field("bridges", &self.bridges.len())
            .finish()
    }
}

struct RawCtx<'a> {
    names: &'a [Generator],
    s: Scalar,
}

impl ExprContext for RawCtx<'_> {
    fn generator(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|g| g.name == name).map(|i| i as u8)
    }

    fn mul(&self, a: &AlgElem, b: &AlgElem) -> Result<AlgElem, AlgError> {
        let mut r = AlgElem::zero();
        for (u, x) in a.terms() {
            for (v, y) in b.terms() {
                let mut w = u.clone();
                w.extend_from_slice(v);
                r.add_term(w, x.mul(y));
            }
        }
        Ok(r)
    }

    fn s_value(&self) -> Scalar {
        self.s.clone()
    }

}

impl ExprContext for Presentation {
    fn generator(&self, name: &str) -> Option<u8> {
        Presentation::generator(self, name)
    }

    fn mul(&self, a: &AlgElem, b: &AlgElem) -> Result<AlgElem, AlgError> {
        self.multiply(a, b)
    }

    fn s_value(&self) -> Scalar {
        self.s.clone()
    }

}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
    .trim()
}

/// Shift the offset of a syntax error from line-relative to file-relative.
fn at_line(e: AlgError, offset: usize) -> AlgError {
    match e {
        AlgError::Syntax {
            pos,
            expected,
            found,
        } => AlgError::Syntax {
            pos: pos + offset,
            expected,
            found,
        },
        AlgError::UnknownGenerator { name, pos } => AlgError::UnknownGenerator {
            name,
            pos: pos + offset,
        },
        e => e,
    }
}

impl Presentation {
    /// Parse a presentation with symbolic `s`.
    pub fn parse(text: &str) -> Result<Presentation, AlgError> {
        Presentation::parse_with(text, Scalar::s())
    }

    /// Parse a presentation, interpreting `q` as `s0^2` for the given value.
    pub fn parse_with(text: &str, s: Scalar) -> Result<Presentation, AlgError> {
        let mut section = String::new();
        let mut gens: Vec<Generator> = Vec::new();
        let mut rule_lines = Vec::new();
        let mut star_lines = Vec::new();
        let mut unit_lines = Vec::new();
        let mut offset = 0;
        for raw in text.split_inclusive('\n') {
            let line_offset = offset + (raw.len() - raw.trim_start().len());
            offset += raw.len();
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            if line.starts_with('[') && line.ends_with(']') {
                section = line[1..line.len() - 1].trim().to_string();
                continue;
            }
            match section.as_str() {
                "generators" => {
                    let mut it = line.split_whitespace();
                    let name = it.next().unwrap().to_string();
                    let grade = it.next().and_then(|g| g.parse::<i32>().ok()).ok_or_else(|| {
                        AlgError::Syntax {
                            pos: line_offset,
                            expected: "`name grade`".into(),
                            found: format!("`{}`", line),
                        }
                    })?;
                    if name == "q" || name == "i" || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                        return Err(AlgError::Invalid(format!("reserved or malformed generator name `{}`", name)));
                    }
                    if gens.iter().any(|g| g.name == name) {
                        return Err(AlgError::Invalid(format!("duplicate generator `{}`", name)));
                    }
                    gens.push(Generator { name, grade });
                }
                "rules" => rule_lines.push((line.to_string(), line_offset)),
                "star" => star_lines.push((line.to_string(), line_offset)),
                "units" => unit_lines.push((line.to_string(), line_offset)),
                other => {
                    return Err(AlgError::Syntax {
                        pos: line_offset,
                        expected: "a section header [generators], [rules], [star] or [units]".into(),
                        found: format!("content in section `{}`", other),
                    })
                }
            }
        }
        if gens.is_empty() {
            return Err(AlgError::Invalid("no generators".into()));
        }
        if gens.len() > u8::MAX as usize {
            return Err(AlgError::Invalid("too many generators".into()));
        }
        let gen_grades: Vec<i32> = gens.iter().map(|g| g.grade).collect();
        let grade = |w: &[u8]| -> i32 { w.iter().map(|&g| gen_grades[g as usize]).sum() };

        let raw = RawCtx {
            names: &gens,
            s: s.clone(),
        };
        let mut rules = Vec::new();
        let mut pending_bridges = Vec::new();
        for (line, off) in &rule_lines {
            let mut p = Parser::new(line, &raw).map_err(|e| at_line(e, *off))?;
            let (before, group, after) = p.rule_lhs().map_err(|e| at_line(e, *off))?;
            let rhs = p.expr().map_err(|e| at_line(e, *off))?;
            p.finish().map_err(|e| at_line(e, *off))?;
            let lhs_grade = grade(&before) + grade(&after);
            for (w, _) in rhs.terms() {
                if grade(w) != lhs_grade {
                    return Err(AlgError::GradeMismatch(format!(
                        "rule `{}`: left side has grade {}, right side term has grade {}",
                        line,
                        lhs_grade,
                        grade(w)
                    )));
                }
            }
            match group {
                None => {
                    if before.is_empty() {
                        return Err(AlgError::Invalid(format!("empty left side in `{}`", line)));
                    }
                    rules.push(Rule { lhs: before, rhs });
                }
                Some(through) => {
                    if before.len() != 1 || after.len() != 1 {
                        return Err(AlgError::Invalid(format!(
                            "a `{{...}}*` rule needs exactly one generator on each side: `{}`",
                            line
                        )));
                    }
                    pending_bridges.push((before[0], through, after[0], rhs, line.clone()));
                }
            }
        }
        let mut bridges = Vec::new();
        for (left, through, right, rhs, line) in pending_bridges {
            let mut lambda_inv = HashMap::new();
            for &x in &through {
                let found = rules.iter().find(|r| r.lhs == [right, x]).and_then(|r| {
                    let mut ts = r.rhs.terms();
                    match (ts.next(), ts.next()) {
                        (Some((w, c)), None) if *w == [x, right] => Some(c.clone()),
                        _ => None,
                    }
                });
                let lambda = found.ok_or_else(|| {
                    AlgError::Invalid(format!(
                        "`{}` needs a rule `{} {} -> c {} {}`",
                        line, gens[right as usize].name, gens[x as usize].name, gens[x as usize].name, gens[right as usize].name
                    ))
                })?;
                lambda_inv.insert(x, lambda.inv().map_err(|_| AlgError::Invalid(line.clone()))?);
            }
            bridges.push(Bridge {
                left,
                through,
                lambda_inv,
                right,
                rhs,
            });
        }
        let mut by_first = vec![Vec::new(); gens.len()];
        for (i, r) in rules.iter().enumerate() {
            by_first[r.lhs[0] as usize].push(i);
        }
        let mut p = Presentation {
            gens,
            rules,
            bridges,
            by_first,
            star_table: Vec::new(),
            units: Vec::new(),
            s,
            budget: budget_from_env(),
            source: text.to_string(),
            cache: RwLock::new(HashMap::new()),
        };

        let mut table: Vec<Option<AlgElem>> = vec![None; p.gens.len()];
        for (line, off) in &star_lines {
            let (lhs, rhs) = line.split_once("->").ok_or(AlgError::Syntax {
                pos: *off,
                expected: "`g -> expr`".into(),
                found: format!("`{}`", line),
            })?;
            let name = lhs.trim();
            let g = p.generator(name).ok_or(AlgError::UnknownGenerator {
                name: name.into(),
                pos: *off,
            })?;
            let rhs_off = off + line.find("->").unwrap() + 2;
            let v = p.parse_expr(rhs).map_err(|e| at_line(e, rhs_off))?;
            table[g as usize] = Some(v);
        }
        if !star_lines.is_empty() {
            let mut st = Vec::new();
            for (g, v) in table.into_iter().enumerate() {
                let v = v.ok_or_else(|| {
                    AlgError::StarInconsistent(format!("no star given for `{}`", p.gens[g].name))
                })?;
                for (w, _) in v.terms() {
                    if grade(w) != -p.gens[g].grade {
                        return Err(AlgError::GradeMismatch(format!(
                            "star of `{}` must have grade {}",
                            p.gens[g].name, -p.gens[g].grade
                        )));
                    }
                }
                st.push(v);
            }
            p.star_table = st;
            for g in 0..p.gens.len() {
                let x = AlgElem::term(vec![g as u8], Scalar::one());
                let back = p.star_elem(&p.star_elem(&x)?)?;
                if back != x {
                    return Err(AlgError::StarInconsistent(format!(
                        "star(star({})) = {}",
                        p.gens[g].name,
                        p.render(&back)
                    )));
                }
            }
        }
        for (line, off) in &unit_lines {
            let v = p.parse_expr(line).map_err(|e| at_line(e, *off))?;
            p.units.push((line.clone(), v));
        }
        Ok(p)
    }

    /// Re-parse the same presentation with a different value of `s`.
    pub fn with_s(&self, s: Scalar) -> Result<Presentation, AlgError> {
        Presentation::parse_with(&self.source, s)
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, name: &str) -> Option<u8> {
        self.gens.iter().position(|g| g.name == name).map(|i| i as u8)
    }

    pub fn gen(&self, name: &str) -> AlgElem {
        let g = self
            .generator(name)
            .unwrap_or_else(|| panic!("no generator `{}`", name));
        AlgElem::term(vec![g], Scalar::one())
    }

    pub fn has_star(&self) -> bool {
        !self.star_table.is_empty()
    }

    pub fn s(&self) -> &Scalar {
        &self.s
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn set_budget(&mut self, budget: u64) {
        self.budget = budget;
    }

    /// The `[units]` entries: expressions that must reduce to 1.
    pub fn unit_relations(&self) -> &[(String, AlgElem)] {
        &self.units
    }

    pub fn word_grade(&self, w: &[u8]) -> i32 {
        w.iter().map(|&g| self.gens[g as usize].grade).sum()
    }

    pub fn word_from_names(&self, names: &[&str]) -> Word {
        names
            .iter()
            .map(|n| self.generator(n).unwrap_or_else(|| panic!("no generator `{}`", n)))
            .collect()
    }

    /// Parse an expression without reducing it: products concatenate words.
    pub fn parse_raw(&self, text: &str) -> Result<AlgElem, AlgError> {
        let raw = RawCtx {
            names: &self.gens,
            s: self.s.clone(),
        };
        let mut p = Parser::new(text, &raw)?;
        let v = p.expr()?;
        p.finish()?;
        Ok(v)
    }

    /// Rule pairs `(lhs word, rhs)`, bridges excluded.
    pub fn rule_pairs(&self) -> Vec<(Word, AlgElem)> {
        self.rules.iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect()
    }

    /// Parse an expression and return its normal form.
    pub fn parse_expr(&self, text: &str) -> Result<AlgElem, AlgError> {
        let mut p = Parser::new(text, self)?;
        let v = p.expr()?;
        p.finish()?;
        Ok(v)
    }

    /// All one-step rewrites of `w`, at every position and by every rule.
    fn all_rewrites(&self, w: &[u8]) -> Vec<AlgElem> {
        let mut out = Vec::new();
        for pos in 0..w.len() {
            self.rewrites_at(w, pos, &mut |r| {
                out.push(r);
                false
            });
        }
        out
    }

    /// Calls `f` for each rewrite at `pos`; stops early if `f` returns true.
    fn rewrites_at(&self, w: &[u8], pos: usize, f: &mut dyn FnMut(AlgElem) -> bool) -> bool {
        let g = w[pos] as usize;
        for &ri in &self.by_first[g] {
            let r = &self.rules[ri];
            if w[pos..].starts_with(&r.lhs) {
                let mut out = AlgElem::zero();
                for (rw, c) in r.rhs.terms() {
                    let mut nw = Vec::with_capacity(w.len() + rw.len());
                    nw.extend_from_slice(&w[..pos]);
                    nw.extend_from_slice(rw);
                    nw.extend_from_slice(&w[pos + r.lhs.len()..]);
                    out.add_term(nw, c.clone());
                }
                if f(out) {
                    return true;
                }
            }
        }
        for b in &self.bridges {
            if b.left as usize != g {
                continue;
            }
            let mut k = pos + 1;
            let mut factor = Scalar::one();
            while k < w.len() && b.through.contains(&w[k]) {
                factor = factor.mul(&b.lambda_inv[&w[k]]);
                k += 1;
            }
            if k < w.len() && w[k] == b.right {
                let mut out = AlgElem::zero();
                for (rw, c) in b.rhs.terms() {
                    let mut nw = Vec::with_capacity(w.len() + rw.len());
                    nw.extend_from_slice(&w[..pos]);
                    nw.extend_from_slice(rw);
                    nw.extend_from_slice(&w[pos + 1..k]);
                    nw.extend_from_slice(&w[k + 1..]);
                    out.add_term(nw, c.mul(&factor));
                }
                if f(out) {
                    return true;
                }
            }
        }
        false
    }

    /// Leftmost rewrite of `w`, if any.
    fn leftmost_rewrite(&self, w: &[u8]) -> Option<AlgElem> {
        let mut found = None;
        for pos in 0..w.len() {
            if self.rewrites_at(w, pos, &mut |r| {
                found = Some(r);
                true
            }) {
                break;
            }
        }
        found
    }

    pub fn is_irreducible(&self, w: &[u8]) -> bool {
        self.leftmost_rewrite(w).is_none()
    }

    /// Normal form of a single word (memoized).
    pub fn normal_form_word(&self, w: &[u8]) -> Result<AlgElem, AlgError> {
        if let Some(v) = self.cache.read().unwrap().get(w) {
            return Ok(v.clone());
        }
        let mut work: BTreeMap<Word, Scalar> = BTreeMap::new();
        work.insert(w.to_vec(), Scalar::one());
        let mut out = AlgElem::zero();
        let mut steps: u64 = 0;
        while let Some((u, c)) = work.pop_first() {
            if c.is_zero() {
                continue;
            }
            if u.as_slice() != w {
                if let Some(v) = self.cache.read().unwrap().get(&u) {
                    out.add_scaled(&c, v);
                    continue;
                }
            }
            match self.leftmost_rewrite(&u) {
                None => out.add_term(u, c),
                Some(r) => {
                    steps += 1;
                    if steps > self.budget {
                        return Err(AlgError::NonTerminating(self.budget));
                    }
                    for (v, d) in r.into_terms() {
                        let e = work.entry(v).or_insert_with(Scalar::zero);
                        *e = e.add(&c.mul(&d));
                    }
                }
            }
        }
        self.cache.write().unwrap().insert(w.to_vec(), out.clone());
        Ok(out)
    }

    /// Normal form of an arbitrary (possibly reducible) combination.
    pub fn normal_form(&self, x: &AlgElem) -> Result<AlgElem, AlgError> {
        let mut out = AlgElem::zero();
        for (w, c) in x.terms() {
            out.add_scaled(c, &self.normal_form_word(w)?);
        }
        Ok(out)
    }

    /// Product of two combinations, reduced to normal form. The factors need
    /// not be normal.
    pub fn multiply(&self, x: &AlgElem, y: &AlgElem) -> Result<AlgElem, AlgError> {
        let mut out = AlgElem::zero();
        for (u, a) in x.terms() {
            for (v, b) in y.terms() {
                let mut w = Vec::with_capacity(u.len() + v.len());
                w.extend_from_slice(u);
                w.extend_from_slice(v);
                out.add_scaled(&a.mul(b), &self.normal_form_word(&w)?);
            }
        }
        Ok(out)
    }

    pub fn star_elem(&self, x: &AlgElem) -> Result<AlgElem, AlgError> {
        if self.star_table.is_empty() {
            return Err(AlgError::StarInconsistent("presentation has no star table".into()));
        }
        let mut out = AlgElem::zero();
        for (w, c) in x.terms() {
            let mut acc = AlgElem::scalar(c.star());
            for &g in w.iter().rev() {
                acc = self.multiply(&acc, &self.star_table[g as usize])?;
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    pub fn components(&self, x: &AlgElem) -> BTreeMap<i32, AlgElem> {
        let mut m: BTreeMap<i32, AlgElem> = BTreeMap::new();
        for (w, c) in x.terms() {
            m.entry(self.word_grade(w))
                .or_default()
                .add_term(w.clone(), c.clone());
        }
        m
    }

    pub fn render_word(&self, w: &[u8]) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = &self.gens[w[i] as usize].name;
            if j - i == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{}^{}", name, j - i));
            }
            i = j;
        }
        parts.join(" ")
    }

    pub fn render(&self, x: &AlgElem) -> String {
        render_terms(x.terms().map(|(w, c)| (self.render_word(w), c.clone())))
    }

    pub fn check_local_confluence(&self, max_len: usize) -> crate::report::Report {
        confluence::check(self, max_len)
    }
}

/// Shared printer for `Σ c·label` combinations, e.g. `1 + q b c`.
pub fn render_terms<I: Iterator<Item = (String, Scalar)>>(terms: I) -> String {
    let mut s = String::new();
    for (label, c) in terms {
        let neg = c.is_negative_monomial();
        let c_abs = if neg { c.neg() } else { c };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if label.is_empty() {
            s.push_str(&c_abs.to_string());
        } else if c_abs.is_one() {
            s.push_str(&label);
        } else if c_abs.as_laurent_monomial().is_some() {
            s.push_str(&format!("{} {}", c_abs, label));
        } else {
            s.push_str(&format!("({}) {}", c_abs, label));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl StarAlgebra for Presentation {
    type Elem = AlgElem;

    fn zero(&self) -> AlgElem {
        AlgElem::zero()
    }

    fn one(&self) -> AlgElem {
        AlgElem::one()
    }

    fn is_zero(&self, x: &AlgElem) -> bool {
        x.is_zero()
    }

    fn add(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        x.add(y)
    }

    fn neg(&self, x: &AlgElem) -> AlgElem {
        x.neg()
    }

    fn scale(&self, c: &Scalar, x: &AlgElem) -> crate::Result<AlgElem> {
        Ok(x.scale(c))
    }

    fn mul(&self, x: &AlgElem, y: &AlgElem) -> crate::Result<AlgElem> {
        Ok(self.multiply(x, y)?)
    }

    fn star(&self, x: &AlgElem) -> crate::Result<AlgElem> {
        Ok(self.star_elem(x)?)
    }

    fn grade_components(&self, x: &AlgElem) -> Vec<(i32, AlgElem)> {
        self.components(x).into_iter().collect()
    }

    fn render(&self, x: &AlgElem) -> String {
        Presentation::render(self, x)
    }

    fn s_value(&self) -> Scalar {
        self.s.clone()
    }

    fn word_terms(&self, x: &AlgElem) -> Option<Vec<(Word, Scalar)>> {
        Some(x.terms().map(|(w, c)| (w.clone(), c.clone())).collect())
    }

    fn word_elem(&self, w: &[u8]) -> Option<AlgElem> {
        Some(AlgElem::term(w.to_vec(), Scalar::one()))
    }
}
