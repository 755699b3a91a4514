//! Twisted free bimodules: elements `Σ x·e` with a distinguished basis whose
//! right action is `e·x = q^{t|x|} x·e`. Tensor products, conjugate modules and
//! the order-reversing map Υ act on keys, i.e. words of basis symbols.

use crate::ncalg::StarAlgebra;
use crate::scalar::Scalar;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModError {
    #[error("map is not right linear: {0}")]
    NotRightLinear(String),
    #[error("no table entry for {0}")]
    MissingEntry(String),
    #[error("braiding is not invertible: {0}")]
    NotInvertible(String),
    #[error("element is outside the module: {0}")]
    OutsideModule(String),
}

/// A basis symbol, or the conjugate of a word of symbols.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sym {
    Atom(u16),
    Bar(Vec<Sym>),
}

impl Sym {
    pub fn bar_of(key: &[Sym]) -> Sym {
        Sym::Bar(key.to_vec())
    }
}

/// A tensor word of basis symbols.
pub type Key = Vec<Sym>;

#[derive(Clone, Debug, PartialEq)]
pub struct AtomInfo {
    pub name: String,
    pub twist: i32,
    pub grade: i32,
    /// Form bidegree; spinor symbols use (0, 0).
    pub bideg: (u8, u8),
}

/// Symbol table of a model: names, twists, grades and bidegrees.
#[derive(Clone, Debug, Default)]
pub struct Symbols {
    atoms: Vec<AtomInfo>,
}

impl Symbols {
    pub fn new() -> Symbols {
        Symbols::default()
    }

    pub fn add(&mut self, name: &str, twist: i32, grade: i32, bideg: (u8, u8)) -> Sym {
        assert!(self.lookup(name).is_none(), "duplicate symbol {}", name);
        self.atoms.push(AtomInfo {
            name: name.to_string(),
            twist,
            grade,
            bideg,
        });
        Sym::Atom((self.atoms.len() - 1) as u16)
    }

    pub fn lookup(&self, name: &str) -> Option<Sym> {
        self.atoms
            .iter()
            .position(|a| a.name == name)
            .map(|i| Sym::Atom(i as u16))
    }

    pub fn get(&self, name: &str) -> Sym {
        self.lookup(name)
            .unwrap_or_else(|| panic!("unknown symbol {}", name))
    }

    pub fn info(&self, s: &Sym) -> Option<&AtomInfo> {
        match s {
            Sym::Atom(i) => self.atoms.get(*i as usize),
            Sym::Bar(_) => None,
        }
    }

    pub fn twist(&self, s: &Sym) -> i32 {
        match s {
            Sym::Atom(i) => self.atoms[*i as usize].twist,
            Sym::Bar(k) => self.key_twist(k),
        }
    }

    pub fn key_twist(&self, k: &[Sym]) -> i32 {
        k.iter().map(|s| self.twist(s)).sum()
    }

    pub fn grade(&self, s: &Sym) -> i32 {
        match s {
            Sym::Atom(i) => self.atoms[*i as usize].grade,
            Sym::Bar(k) => -self.key_grade(k),
        }
    }

    pub fn key_grade(&self, k: &[Sym]) -> i32 {
        k.iter().map(|s| self.grade(s)).sum()
    }

    pub fn bideg(&self, s: &Sym) -> (u8, u8) {
        match s {
            Sym::Atom(i) => self.atoms[*i as usize].bideg,
            Sym::Bar(k) => k.iter().fold((0, 0), |acc, s| {
                let b = self.bideg(s);
                (acc.0 + b.1, acc.1 + b.0)
            }),
        }
    }

    pub fn render_sym(&self, s: &Sym) -> String {
        match s {
            Sym::Atom(i) => self.atoms[*i as usize].name.clone(),
            Sym::Bar(k) => format!("bar({})", self.render_key(k)),
        }
    }

    pub fn render_key(&self, k: &[Sym]) -> String {
        k.iter()
            .map(|s| self.render_sym(s))
            .collect::<Vec<_>>()
            .join("⊗")
    }
}

/// Element of a twisted free bimodule: left coefficients on tensor keys.
#[derive(Clone, PartialEq, Debug)]
pub struct ModElem<E> {
    terms: BTreeMap<Key, E>,
}

impl<E> Default for ModElem<E> {
    fn default() -> Self {
        ModElem {
            terms: BTreeMap::new(),
        }
    }
}

impl<E: Clone> ModElem<E> {
    pub fn zero() -> Self {
        ModElem::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &E)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &Key> {
        self.terms.keys()
    }

    pub fn coeff(&self, k: &[Sym]) -> Option<&E> {
        self.terms.get(k)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A table from basis keys to module elements, e.g. ∇, σ, ▷ or J on a basis.
pub type BasisMap<E> = HashMap<Key, ModElem<E>>;

/// Module operations over a given algebra and symbol table.
pub struct Ctx<'a, A: StarAlgebra> {
    pub alg: &'a A,
    pub syms: &'a Symbols,
}

impl<'a, A: StarAlgebra> Clone for Ctx<'a, A> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<'a, A: StarAlgebra> Copy for Ctx<'a, A> {}

type R<T> = crate::Result<T>;

impl<'a, A: StarAlgebra> Ctx<'a, A> {
    pub fn new(alg: &'a A, syms: &'a Symbols) -> Self {
        Ctx { alg, syms }
    }

    pub fn add_term(&self, m: &mut ModElem<A::Elem>, k: Key, c: A::Elem) {
        if self.alg.is_zero(&c) {
            return;
        }
        match m.terms.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.alg.add(o.get(), &c);
                if self.alg.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// `c·k`.
    pub fn term(&self, c: A::Elem, k: Key) -> ModElem<A::Elem> {
        let mut m = ModElem::zero();
        self.add_term(&mut m, k, c);
        m
    }

    /// `1·k`.
    pub fn unit(&self, k: Key) -> ModElem<A::Elem> {
        self.term(self.alg.one(), k)
    }

    pub fn basis(&self, s: &Sym) -> ModElem<A::Elem> {
        self.unit(vec![s.clone()])
    }

    pub fn add(&self, m: &ModElem<A::Elem>, n: &ModElem<A::Elem>) -> ModElem<A::Elem> {
        let mut r = m.clone();
        for (k, c) in n.terms() {
            self.add_term(&mut r, k.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self, m: &ModElem<A::Elem>) -> ModElem<A::Elem> {
        ModElem {
            terms: m
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), self.alg.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, m: &ModElem<A::Elem>, n: &ModElem<A::Elem>) -> ModElem<A::Elem> {
        self.add(m, &self.neg(n))
    }

    pub fn sum<I: IntoIterator<Item = ModElem<A::Elem>>>(&self, it: I) -> ModElem<A::Elem> {
        it.into_iter()
            .fold(ModElem::zero(), |acc, m| self.add(&acc, &m))
    }

    pub fn scale(&self, c: &Scalar, m: &ModElem<A::Elem>) -> R<ModElem<A::Elem>> {
        let mut r = ModElem::zero();
        for (k, x) in m.terms() {
            self.add_term(&mut r, k.clone(), self.alg.scale(c, x)?);
        }
        Ok(r)
    }

    /// `x·m`.
    pub fn left_mul(&self, x: &A::Elem, m: &ModElem<A::Elem>) -> R<ModElem<A::Elem>> {
        let mut r = ModElem::zero();
        for (k, c) in m.terms() {
            self.add_term(&mut r, k.clone(), self.alg.mul(x, c)?);
        }
        Ok(r)
    }

    /// Move `x` from the right of key `k` to its left: `k·x = Σ q^{t|x_g|} x_g·k`.
    pub fn through_key(&self, k: &[Sym], x: &A::Elem) -> R<A::Elem> {
        let t = self.syms.key_twist(k);
        if t == 0 {
            return Ok(x.clone());
        }
        let mut acc = self.alg.zero();
        for (g, part) in self.alg.grade_components(x) {
            let f = self.alg.q_pow(t as i64 * g as i64);
            acc = self.alg.add(&acc, &self.alg.scale(&f, &part)?);
        }
        Ok(acc)
    }

    /// `m·x`.
    pub fn right_mul(&self, m: &ModElem<A::Elem>, x: &A::Elem) -> R<ModElem<A::Elem>> {
        let mut r = ModElem::zero();
        for (k, c) in m.terms() {
            let moved = self.through_key(k, x)?;
            self.add_term(&mut r, k.clone(), self.alg.mul(c, &moved)?);
        }
        Ok(r)
    }

    /// `m ⊗_A n`, with the coefficients of `n` moved through the keys of `m`.
    pub fn tensor(&self, m: &ModElem<A::Elem>, n: &ModElem<A::Elem>) -> R<ModElem<A::Elem>> {
        let mut r = ModElem::zero();
        for (k1, c1) in m.terms() {
            for (k2, c2) in n.terms() {
                let moved = self.through_key(k1, c2)?;
                let mut k = k1.clone();
                k.extend(k2.iter().cloned());
                self.add_term(&mut r, k, self.alg.mul(c1, &moved)?);
            }
        }
        Ok(r)
    }

    /// Extend a basis table left-linearly.
    pub fn apply_basis_map<F>(&self, m: &ModElem<A::Elem>, f: F) -> R<ModElem<A::Elem>>
    where
        F: Fn(&Key) -> R<ModElem<A::Elem>>,
    {
        let mut r = ModElem::zero();
        for (k, c) in m.terms() {
            let img = f(k)?;
            r = self.add(&r, &self.left_mul(c, &img)?);
        }
        Ok(r)
    }

    /// Apply a map to the factors `start..start+len` of every key, keeping the
    /// other factors: `c·(pre ⊗ f(mid) ⊗ post)`.
    pub fn map_span<F>(&self, m: &ModElem<A::Elem>, start: usize, len: usize, f: F) -> R<ModElem<A::Elem>>
    where
        F: Fn(&[Sym]) -> R<ModElem<A::Elem>>,
    {
        let mut r = ModElem::zero();
        for (k, c) in m.terms() {
            if k.len() < start + len {
                return Err(ModError::MissingEntry(format!(
                    "key {} is shorter than {}",
                    self.syms.render_key(k),
                    start + len
                ))
                .into());
            }
            let img = f(&k[start..start + len])?;
            let pre = self.unit(k[..start].to_vec());
            let post = self.unit(k[start + len..].to_vec());
            let t = self.tensor(&self.tensor(&pre, &img)?, &post)?;
            r = self.add(&r, &self.left_mul(c, &t)?);
        }
        Ok(r)
    }

    /// Lookup helper for tables keyed by basis keys.
    pub fn table<'t>(&self, t: &'t BasisMap<A::Elem>, k: &[Sym]) -> R<&'t ModElem<A::Elem>> {
        t.get(k)
            .ok_or_else(|| ModError::MissingEntry(self.syms.render_key(k)).into())
    }

    /// The conjugate: `bar(x·k) = q^{-t|x|} x*·bar(k)`, with `bar(bar(k)) = k`.
    pub fn conj(&self, m: &ModElem<A::Elem>) -> R<ModElem<A::Elem>> {
        let mut r = ModElem::zero();
        for (k, c) in m.terms() {
            let t = self.syms.key_twist(k);
            let mut coeff = self.alg.zero();
            for (g, part) in self.alg.grade_components(c) {
                let f = self.alg.q_pow(-(t as i64) * g as i64);
                coeff = self.alg.add(&coeff, &self.alg.scale(&f, &self.alg.star(&part)?)?);
            }
            let key = match k.as_slice() {
                [Sym::Bar(inner)] => inner.clone(),
                _ => vec![Sym::bar_of(k)],
            };
            self.add_term(&mut r, key, coeff);
        }
        Ok(r)
    }

    /// Υ: bar(e₁⊗…⊗eₙ) ↦ bar(eₙ)⊗…⊗bar(e₁).
    pub fn upsilon(&self, m: &ModElem<A::Elem>) -> R<ModElem<A::Elem>> {
        let mut r = ModElem::zero();
        for (k, c) in m.terms() {
            let inner = match k.as_slice() {
                [Sym::Bar(inner)] => inner,
                _ => {
                    return Err(ModError::OutsideModule(format!(
                        "Υ needs a conjugated tensor, got {}",
                        self.syms.render_key(k)
                    ))
                    .into())
                }
            };
            let key = inner.iter().rev().map(|s| Sym::Bar(vec![s.clone()])).collect();
            self.add_term(&mut r, key, c.clone());
        }
        Ok(r)
    }

    /// Υ⁻¹: bar(eₙ)⊗…⊗bar(e₁) ↦ bar(e₁⊗…⊗eₙ).
    pub fn upsilon_inv(&self, m: &ModElem<A::Elem>) -> R<ModElem<A::Elem>> {
        let mut r = ModElem::zero();
        for (k, c) in m.terms() {
            let mut inner = Vec::new();
            for s in k.iter().rev() {
                match s {
                    Sym::Bar(v) if v.len() == 1 => inner.push(v[0].clone()),
                    _ => {
                        return Err(ModError::OutsideModule(format!(
                            "Υ⁻¹ needs a tensor of conjugated symbols, got {}",
                            self.syms.render_key(k)
                        ))
                        .into())
                    }
                }
            }
            self.add_term(&mut r, vec![Sym::Bar(inner)], c.clone());
        }
        Ok(r)
    }

    /// Total grade of each term: coefficient grade plus key grade.
    pub fn grades(&self, m: &ModElem<A::Elem>) -> Vec<i32> {
        let mut out = Vec::new();
        for (k, c) in m.terms() {
            for (g, _) in self.alg.grade_components(c) {
                let tot = g + self.syms.key_grade(k);
                if !out.contains(&tot) {
                    out.push(tot);
                }
            }
        }
        out.sort();
        out
    }

    /// Keep only the terms whose keys satisfy `keep`.
    pub fn filter_keys<F: Fn(&Key) -> bool>(&self, m: &ModElem<A::Elem>, keep: F) -> ModElem<A::Elem> {
        ModElem {
            terms: m
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Verify `f(k·x) = f(k)·x` on the given keys and algebra elements.
    pub fn check_right_linear<F>(&self, keys: &[Key], xs: &[A::Elem], f: F) -> R<()>
    where
        F: Fn(&Key) -> R<ModElem<A::Elem>>,
    {
        for k in keys {
            for x in xs {
                let kx = self.right_mul(&self.unit(k.clone()), x)?;
                let lhs = self.apply_basis_map(&kx, &f)?;
                let rhs = self.right_mul(&f(k)?, x)?;
                if lhs != rhs {
                    return Err(ModError::NotRightLinear(format!(
                        "on {}·({}): {} vs {}",
                        self.syms.render_key(k),
                        self.alg.render(x),
                        self.render(&lhs),
                        self.render(&rhs)
                    ))
                    .into());
                }
            }
        }
        Ok(())
    }

    pub fn render(&self, m: &ModElem<A::Elem>) -> String {
        render_with(m, |c| self.alg.render(c), |k| self.syms.render_key(k))
    }
}

/// Print `Σ c·k` with parenthesized multi-term coefficients.
pub fn render_with<E, F, G>(m: &ModElem<E>, coef: F, key: G) -> String
where
    E: Clone,
    F: Fn(&E) -> String,
    G: Fn(&Key) -> String,
{
    let mut s = String::new();
    for (k, c) in m.terms() {
        let cs = coef(c);
        let ks = key(k);
        let single = !cs[1..].contains(" + ") && !cs[1..].contains(" - ");
        let (neg, body) = if single && cs.starts_with('-') {
            (true, cs[1..].to_string())
        } else {
            (false, cs)
        };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let label = if k.is_empty() { String::new() } else { ks };
        if body == "1" && !label.is_empty() {
            s.push_str(&label);
        } else if label.is_empty() {
            if single {
                s.push_str(&body);
            } else {
                s.push_str(&format!("({})", body));
            }
        } else if single {
            s.push_str(&format!("{} {}", body, label));
        } else {
            s.push_str(&format!("({}) {}", body, label));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Atom(i) => write!(f, "#{}", i),
            Sym::Bar(k) => {
                write!(f, "bar(")?;
                for (i, s) in k.iter().enumerate() {
                    if i > 0 {
                        write!(f, "⊗")?;
                    }
                    write!(f, "{}", s)?;
                }
                write!(f, ")")
            }
        }
    }
}
