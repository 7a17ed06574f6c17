//! Defining relations of the reflection-equation algebra and of the doubled
//! quantum loop algebra, extracted coefficient-by-coefficient, and the
//! synthesis of quadratic rewrite rules from them.
//!
//! Every defining relation is a bivariate series identity whose terms are
//! scalar prefactors u^e1 v^e2 times a product of two generating series.
//! Extracting the coefficient of a fixed power pair turns each into a finite
//! linear combination of two-letter words.  The prefactors are not all of
//! one total degree, so a single extracted relation mixes mode degrees d and
//! d - 2: the algebra is filtered, not graded.  Rules are therefore solved
//! degree by degree from the bottom, with the lower-degree tails already in
//! normal form when a degree enters the linear solve.

use crate::ncalg::{
    is_normal_word, is_reducible_pair, letters_of_degree, normal_words_of, words_of,
    Family, GenSym, NCElem, ReduceError, RewriteTable, Word,
};
use crate::scalars::QRatFun;
use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum SynthError {
    #[error("no relation pins the reducible pair {pair} at degree {degree}")]
    Underdetermined { pair: String, degree: i64 },
    #[error("relations force a nonzero combination of normal words at degree {degree}: {residual}")]
    Inconsistent { degree: i64, residual: String },
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

// ---------------------------------------------------------------------------
// Relation terms and coefficient extraction
// ---------------------------------------------------------------------------

/// Which spectral variable a series factor depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Var {
    U,
    V,
}

/// One series factor: family letter indices plus the direction of the
/// series (-1 for sum over u^-r, +1 for sum over u^+r).
#[derive(Debug, Clone, Copy)]
struct FactorSpec {
    fam: Family,
    i: u8,
    j: u8,
    dir: i8,
}

/// One bilinear term of a defining relation:
/// coeff * u^{e_u} v^{e_v} * f1(var1) f2(var2), in this word order.
#[derive(Debug, Clone)]
struct RelTerm {
    coeff: QRatFun,
    e_u: i64,
    e_v: i64,
    f1: FactorSpec,
    v1: Var,
    f2: FactorSpec,
    v2: Var,
}

enum Subst {
    Zero,
    One,
    Gen(GenSym),
}

/// The coefficient of the generating series of the family at mode r, after
/// zero-mode substitution: a letter, 1, or 0.  None for negative modes.
pub fn letter_series_coeff(fam: Family, i: u8, j: u8, r: i64) -> Option<NCElem> {
    if r < 0 {
        return None;
    }
    Some(match letter_subst(fam, i, j, r) {
        Subst::Zero => NCElem::zero(),
        Subst::One => NCElem::one(),
        Subst::Gen(g) => NCElem::from_letter(g),
    })
}

/// Zero-mode substitution: the presentations pin certain mode-0 letters to
/// 0 or 1, and those letters never appear in words.
fn letter_subst(fam: Family, i: u8, j: u8, mode: i64) -> Subst {
    if mode < 0 {
        return Subst::Zero;
    }
    if mode == 0 {
        match fam {
            Family::S | Family::Sigma => {
                if i < j {
                    return Subst::Zero;
                }
                if i == j {
                    return Subst::One;
                }
            }
            Family::T => {
                if i < j {
                    return Subst::Zero;
                }
            }
            Family::Tbar => {
                if i > j {
                    return Subst::Zero;
                }
            }
        }
    }
    Subst::Gen(GenSym::new(fam, i, j, mode as u32))
}

impl RelTerm {
    /// The word contributed at coefficient position (h_u, h_v), if any.
    fn extract(&self, h_u: i64, h_v: i64) -> Option<(Word, QRatFun)> {
        let mode_of = |spec: &FactorSpec, var: Var| -> i64 {
            let (e, h) = match var {
                Var::U => (self.e_u, h_u),
                Var::V => (self.e_v, h_v),
            };
            if spec.dir < 0 {
                e - h
            } else {
                h - e
            }
        };
        let m1 = mode_of(&self.f1, self.v1);
        let m2 = mode_of(&self.f2, self.v2);
        let mut letters = Vec::with_capacity(2);
        for (spec, m) in [(&self.f1, m1), (&self.f2, m2)] {
            match letter_subst(spec.fam, spec.i, spec.j, m) {
                Subst::Zero => return None,
                Subst::One => {}
                Subst::Gen(g) => letters.push(g),
            }
        }
        Some((Word::from_letters(letters), self.coeff.clone()))
    }
}

fn delta(a: u8, b: u8) -> i64 {
    if a == b {
        1
    } else {
        0
    }
}

fn ind(c: bool) -> QRatFun {
    if c {
        QRatFun::one()
    } else {
        QRatFun::zero()
    }
}

/// q^{-1} - q.
fn qdm() -> QRatFun {
    QRatFun::qdiff().neg()
}

// --- reflection-equation relations -----------------------------------------

/// The two bilinear blocks of the inner kernel for indices (i,j,a,b):
/// (q^{-d_aj} - q^{d_aj} uv) s_ia s_jb + (1/q - q)(d_{j<a} + uv d_{a<j}) s_ij s_ab,
/// with the first factor depending on `var1` and the second on the other
/// variable.  `swapped = true` evaluates the kernel at interchanged
/// arguments, which flips which factor carries u.
fn alpha_terms(i: u8, j: u8, a: u8, b: u8, swapped: bool, outer: &QRatFun, out_eu: i64, out_ev: i64, out: &mut Vec<RelTerm>) {
    let (v1, v2) = if swapped { (Var::V, Var::U) } else { (Var::U, Var::V) };
    let spec = |i, j| FactorSpec { fam: Family::S, i, j, dir: -1 };
    let daj = delta(a, j);
    let push = |out: &mut Vec<RelTerm>, c: QRatFun, extra_uv: i64, f1: FactorSpec, f2: FactorSpec| {
        if c.is_zero() {
            return;
        }
        out.push(RelTerm {
            coeff: c,
            e_u: out_eu + extra_uv,
            e_v: out_ev + extra_uv,
            f1,
            v1,
            f2,
            v2,
        });
    };
    push(out, outer.mul(&QRatFun::qpow(-daj)), 0, spec(i, a), spec(j, b));
    push(out, outer.mul(&QRatFun::qpow(daj)).neg(), 1, spec(i, a), spec(j, b));
    push(out, outer.mul(&qdm()).mul(&ind(j < a)), 0, spec(i, j), spec(a, b));
    push(out, outer.mul(&qdm()).mul(&ind(a < j)), 1, spec(i, j), spec(a, b));
}

/// All bilinear terms of the reflection relation with outer indices
/// (i,j,a,b), as left side minus right side.
fn reflection_identity_terms(i: u8, j: u8, a: u8, b: u8) -> Vec<RelTerm> {
    let mut out = Vec::with_capacity(32);
    let dij = delta(i, j);
    let dab = delta(a, b);
    // (q^{-d_ij} u - q^{d_ij} v) alpha_{ijab}(u,v)
    alpha_terms(i, j, a, b, false, &QRatFun::qpow(-dij), 1, 0, &mut out);
    alpha_terms(i, j, a, b, false, &QRatFun::qpow(dij).neg(), 0, 1, &mut out);
    // (1/q - q)(u d_{j<i} + v d_{i<j}) alpha_{jiab}(u,v)
    alpha_terms(j, i, a, b, false, &qdm().mul(&ind(j < i)), 1, 0, &mut out);
    alpha_terms(j, i, a, b, false, &qdm().mul(&ind(i < j)), 0, 1, &mut out);
    // minus (q^{-d_ab} u - q^{d_ab} v) alpha_{jiba}(v,u)
    alpha_terms(j, i, b, a, true, &QRatFun::qpow(-dab).neg(), 1, 0, &mut out);
    alpha_terms(j, i, b, a, true, &QRatFun::qpow(dab), 0, 1, &mut out);
    // minus (1/q - q)(u d_{a<b} + v d_{b<a}) alpha_{jiab}(v,u)
    alpha_terms(j, i, a, b, true, &qdm().neg().mul(&ind(a < b)), 1, 0, &mut out);
    alpha_terms(j, i, a, b, true, &qdm().neg().mul(&ind(b < a)), 0, 1, &mut out);
    out
}

// --- doubled loop-algebra relations -----------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LoopKind {
    /// R T1(u) T2(v) = T2(v) T1(u) R; both series in negative powers.
    TT,
    /// Same exchange for the positive-power series.
    BB,
    /// R Tbar1(u) T2(v) = T2(v) Tbar1(u) R; mixes the two directions.
    Mixed,
}

/// Bilinear terms of a loop-algebra exchange relation at entry (i,a),(j,b):
/// the R-matrix has one diagonal and at most one weight entry per row and
/// column, so each side expands into at most two products.
fn loop_identity_terms(kind: LoopKind, i: u8, a: u8, j: u8, b: u8) -> Vec<RelTerm> {
    let (fam1, dir1) = match kind {
        LoopKind::TT => (Family::T, -1i8),
        LoopKind::BB => (Family::Tbar, 1),
        LoopKind::Mixed => (Family::Tbar, 1),
    };
    let (fam2, dir2) = match kind {
        LoopKind::TT => (Family::T, -1i8),
        LoopKind::BB => (Family::Tbar, 1),
        LoopKind::Mixed => (Family::T, -1),
    };
    let s1 = |i, j| FactorSpec { fam: fam1, i, j, dir: dir1 };
    let s2 = |i, j| FactorSpec { fam: fam2, i, j, dir: dir2 };
    let mut out = Vec::with_capacity(12);
    let mut push = |c: QRatFun, e_u: i64, e_v: i64, f1: FactorSpec, v1: Var, f2: FactorSpec, v2: Var| {
        if !c.is_zero() {
            out.push(RelTerm { coeff: c, e_u, e_v, f1, v1, f2, v2 });
        }
    };
    // Left side: diagonal R entry times x_{ij}(u) y_{ab}(v).
    let (du, dv) = if i == a {
        (QRatFun::qpow(-1), QRatFun::q().neg())
    } else {
        (QRatFun::one(), QRatFun::one().neg())
    };
    push(du, 1, 0, s1(i, j), Var::U, s2(a, b), Var::V);
    push(dv, 0, 1, s1(i, j), Var::U, s2(a, b), Var::V);
    // Left side: weight entry (row (i,a), column (a,i)) for i != a.
    if i != a {
        let (e_u, e_v) = if i > a { (1, 0) } else { (0, 1) };
        push(qdm(), e_u, e_v, s1(a, j), Var::U, s2(i, b), Var::V);
    }
    // Right side (subtracted): y_{ab}(v) x_{ij}(u) times diagonal R entry.
    let (du, dv) = if j == b {
        (QRatFun::qpow(-1).neg(), QRatFun::q())
    } else {
        (QRatFun::one().neg(), QRatFun::one())
    };
    push(du, 1, 0, s2(a, b), Var::V, s1(i, j), Var::U);
    push(dv, 0, 1, s2(a, b), Var::V, s1(i, j), Var::U);
    // Right side: weight entry (row (b,j), column (j,b)) for j != b.
    if j != b {
        let (e_u, e_v) = if b > j { (1, 0) } else { (0, 1) };
        push(qdm().neg(), e_u, e_v, s2(a, j), Var::V, s1(i, b), Var::U);
    }
    out
}

/// Extraction positions (h_u, h_v) whose top word degree is exactly d.
fn positions(kind: Option<LoopKind>, d: i64) -> Vec<(i64, i64)> {
    match kind {
        // Reflection: prefactor exponents sum to 1 or 3 with each at most 2;
        // top degree d sits on the anti-diagonal h_u + h_v = 3 - d.
        None => {
            let sigma = 3 - d;
            (sigma - 2..=2).map(|h_u| (h_u, sigma - h_u)).collect()
        }
        // Same-direction loop relations: exponents sum to 1, each at most 1.
        Some(LoopKind::TT) => {
            let sigma = 1 - d;
            (sigma - 1..=1).map(|h_u| (h_u, sigma - h_u)).collect()
        }
        Some(LoopKind::BB) => {
            let sigma = 1 + d;
            (0..=d + 1).map(|h_u| (h_u, sigma - h_u)).collect()
        }
        // Mixed: positive series in u, negative in v; top degree d sits on
        // the difference diagonal h_u - h_v = d - 1.
        Some(LoopKind::Mixed) => (0..=d + 1).map(|h_u| (h_u, h_u - d + 1)).collect(),
    }
}

fn extract_at(terms: &[RelTerm], h_u: i64, h_v: i64) -> NCElem {
    let mut rel = NCElem::zero();
    for t in terms {
        if let Some((w, c)) = t.extract(h_u, h_v) {
            rel.add_term(w, c);
        }
    }
    rel
}

/// All defining relations of the family whose top mode degree is d, as
/// elements of the free algebra that the quotient sets to zero.
pub fn relations_at(family: Family, n: u8, d: i64) -> Vec<NCElem> {
    let mut out = Vec::new();
    let mut harvest = |terms: &[RelTerm], kind: Option<LoopKind>| {
        for (h_u, h_v) in positions(kind, d) {
            let rel = extract_at(terms, h_u, h_v);
            if !rel.is_zero() {
                out.push(rel);
            }
        }
    };
    match family {
        Family::S | Family::Sigma => {
            for i in 1..=n {
                for j in 1..=n {
                    for a in 1..=n {
                        for b in 1..=n {
                            let terms = reflection_identity_terms(i, j, a, b);
                            harvest(&terms, None);
                        }
                    }
                }
            }
        }
        Family::T | Family::Tbar => {
            for kind in [LoopKind::TT, LoopKind::BB, LoopKind::Mixed] {
                for i in 1..=n {
                    for a in 1..=n {
                        for j in 1..=n {
                            for b in 1..=n {
                                let terms = loop_identity_terms(kind, i, a, j, b);
                                harvest(&terms, Some(kind));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// All reducible two-letter words of the family with the given total degree
/// that require a synthesized rule (seeded unit pairs excluded by the
/// caller through the rule check).
fn reducible_pairs(family: Family, n: u8, d: i64) -> Vec<Word> {
    let mut out = Vec::new();
    for d1 in 0..=d {
        for x in letters_of_degree(family, n, d1 as u32) {
            for y in letters_of_degree(family, n, (d - d1) as u32) {
                if is_reducible_pair(x, y) {
                    out.push(Word::from_letters([x, y]));
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// The algebra context: table, synthesis, memoized reduction
// ---------------------------------------------------------------------------

const DEFAULT_BUDGET: u64 = 4_000_000_000;

struct Inner {
    table: RewriteTable,
    nf_memo: HashMap<Word, Arc<NCElem>>,
    absorb_memo: HashMap<(Word, GenSym), Arc<NCElem>>,
    steps: u64,
    budget: u64,
}

/// A presented algebra: the rewrite table synthesized through some degree,
/// with memoized reduction to normal form.  Extending the table never
/// invalidates memoized results, because rules are only ever added for pairs
/// that previously had none.
pub struct Algebra {
    pub family: Family,
    pub n: u8,
    inner: RwLock<Inner>,
}

impl Algebra {
    pub fn new(family: Family, n: u8) -> Algebra {
        let mut table = RewriteTable::new(family, n);
        if matches!(family, Family::T | Family::Tbar) {
            // Diagonal zero modes are mutually inverse; these two rule
            // shapes are part of the presentation, not solved for.
            for i in 1..=n {
                let t0 = GenSym::new(Family::T, i, i, 0);
                let tb0 = GenSym::new(Family::Tbar, i, i, 0);
                table.insert_rule(t0, tb0, NCElem::one());
                table.insert_rule(tb0, t0, NCElem::one());
            }
        }
        Algebra {
            family,
            n,
            inner: RwLock::new(Inner {
                table,
                nf_memo: HashMap::new(),
                absorb_memo: HashMap::new(),
                steps: 0,
                budget: DEFAULT_BUDGET,
            }),
        }
    }

    pub fn from_table(table: RewriteTable) -> Algebra {
        Algebra {
            family: table.family,
            n: table.n,
            inner: RwLock::new(Inner {
                table,
                nf_memo: HashMap::new(),
                absorb_memo: HashMap::new(),
                steps: 0,
                budget: DEFAULT_BUDGET,
            }),
        }
    }

    pub fn set_budget(&self, budget: u64) {
        self.inner.write().unwrap().budget = budget;
    }

    pub fn dmax(&self) -> i64 {
        self.inner.read().unwrap().table.dmax
    }

    pub fn table_lines(&self) -> String {
        self.inner.read().unwrap().table.to_lines()
    }

    /// Run a closure against the current table snapshot.
    pub fn with_table<R>(&self, f: impl FnOnce(&RewriteTable) -> R) -> R {
        f(&self.inner.read().unwrap().table)
    }

    /// Synthesize rewrite rules through total degree `dmax`.
    pub fn extend_to(&self, dmax: i64) -> Result<(), SynthError> {
        let mut inner = self.inner.write().unwrap();
        while inner.table.dmax < dmax {
            let d = inner.table.dmax + 1;
            solve_degree(&mut inner, d)?;
            inner.table.dmax = d;
        }
        Ok(())
    }

    /// Normal form, auto-extending the table to the element's top degree.
    pub fn nf(&self, e: &NCElem) -> Result<NCElem, SynthError> {
        if let Some(d) = e.max_degree() {
            self.extend_to(d)?;
        }
        let mut inner = self.inner.write().unwrap();
        let mut out = NCElem::zero();
        for (w, c) in e.terms() {
            let t = inner.nf_word(w)?;
            out.add_scaled(&t, c);
        }
        Ok(out)
    }

    /// Normal form of a product of elements already in normal form.
    pub fn nf_mul(&self, a: &NCElem, b: &NCElem) -> Result<NCElem, SynthError> {
        self.nf(&a.mul(b))
    }

    /// True when the element reduces to zero.
    pub fn is_zero_mod_relations(&self, e: &NCElem) -> Result<bool, SynthError> {
        Ok(self.nf(e)?.is_zero())
    }

    /// Compare leftmost-first and rightmost-first single-shot reduction on
    /// every word of the exact length with total degree at most dmax.
    pub fn confluence_probe(&self, length: usize, dmax: i64, max_steps: u64) -> Result<bool, SynthError> {
        self.extend_to(dmax)?;
        let inner = self.inner.read().unwrap();
        for d in 0..=dmax {
            for w in words_of(self.family, self.n, length, d) {
                if !crate::ncalg::confluence_probe_word(&w, &inner.table, max_steps)
                    .map_err(SynthError::Reduce)?
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Rank of the span of the top graded components of the normal forms of
    /// all (length, degree) words, paired with the count of normal words of
    /// that length and degree.  The two are equal exactly when the ordered
    /// monomials of the top component stay independent, which is the graded
    /// shadow of the PBW property.
    pub fn graded_dimension(&self, length: usize, degree: i64) -> Result<(usize, usize), SynthError> {
        self.extend_to(degree)?;
        let mut basis: BTreeMap<Word, NCElem> = BTreeMap::new();
        for w in words_of(self.family, self.n, length, degree) {
            let nf = self.nf(&NCElem::from_word(w))?;
            let mut row = nf.component(length, degree);
            // Reduce against the accumulated row space.
            loop {
                let lead = match row.leading() {
                    None => break,
                    Some((w, c)) => (w.clone(), c.clone()),
                };
                match basis.get(&lead.0) {
                    Some(b) => row.add_scaled(b, &lead.1.neg()),
                    None => {
                        let inv = lead.1.inv();
                        basis.insert(lead.0, row.scale(&inv));
                        break;
                    }
                }
            }
        }
        let count = normal_words_of(self.family, self.n, length, degree).len();
        Ok((basis.len(), count))
    }
}

impl Inner {
    fn nf_word(&mut self, w: &Word) -> Result<Arc<NCElem>, ReduceError> {
        if let Some(x) = self.nf_memo.get(w) {
            return Ok(x.clone());
        }
        let res = if is_normal_word(w) {
            Arc::new(NCElem::from_word(w.clone()))
        } else {
            let mut stem = w.clone();
            let g = stem.0.pop().unwrap();
            let a = self.nf_word(&stem)?;
            Arc::new(self.absorb_elem(&a, g)?)
        };
        self.nf_memo.insert(w.clone(), res.clone());
        Ok(res)
    }

    fn absorb_elem(&mut self, e: &NCElem, g: GenSym) -> Result<NCElem, ReduceError> {
        let mut out = NCElem::zero();
        for (v, c) in e.terms() {
            let t = self.absorb(v, g)?;
            out.add_scaled(&t, c);
        }
        Ok(out)
    }

    /// Append the letter to a normal word and reduce; memoized.
    fn absorb(&mut self, v: &Word, g: GenSym) -> Result<Arc<NCElem>, ReduceError> {
        let key = (v.clone(), g);
        if let Some(x) = self.absorb_memo.get(&key) {
            return Ok(x.clone());
        }
        self.steps += 1;
        if self.steps > self.budget {
            return Err(ReduceError::StepBudget { budget: self.budget });
        }
        let last = v.0.last().copied();
        let res = match last {
            Some(x) if is_reducible_pair(x, g) => {
                let rhs = self
                    .table
                    .rule(x, g)
                    .cloned()
                    .ok_or(ReduceError::MissingRule { left: x, right: g, degree: x.degree() + g.degree() })?;
                let stem = Word(v.0[..v.0.len() - 1].to_vec());
                let mut out = NCElem::zero();
                for (u, c) in rhs.terms() {
                    let mut cur = NCElem::from_word(stem.clone());
                    for g2 in &u.0 {
                        cur = self.absorb_elem(&cur, *g2)?;
                    }
                    out.add_scaled(&cur, c);
                }
                Arc::new(out)
            }
            _ => {
                let mut w = v.clone();
                w.0.push(g);
                Arc::new(NCElem::from_word(w))
            }
        };
        self.absorb_memo.insert(key, res.clone());
        Ok(res)
    }
}

// --- the linear solve for one degree ----------------------------------------

struct Row {
    unk: BTreeMap<Word, QRatFun>,
    rest: NCElem,
}

impl Row {
    fn sub_scaled(&mut self, other: &Row, k: &QRatFun) {
        for (w, c) in &other.unk {
            let cur = self.unk.remove(w).unwrap_or_else(QRatFun::zero);
            let nv = cur.sub(&c.mul(k));
            if !nv.is_zero() {
                self.unk.insert(w.clone(), nv);
            }
        }
        self.rest.add_scaled(&other.rest, &k.neg());
    }

    fn scale(&mut self, k: &QRatFun) {
        for c in self.unk.values_mut() {
            *c = c.mul(k);
        }
        self.rest = self.rest.scale(k);
    }
}

fn solve_degree(inner: &mut Inner, d: i64) -> Result<(), SynthError> {
    let family = inner.table.family;
    let n = inner.table.n;
    let rels = relations_at(family, n, d);
    // Assemble rows: unknowns are the reducible pairs of this degree that
    // still lack rules; everything else is normal-formed with the table
    // built so far (tails have strictly lower degree, so their rules exist).
    let mut rows: Vec<Row> = Vec::new();
    for rel in &rels {
        let mut row = Row { unk: BTreeMap::new(), rest: NCElem::zero() };
        for (w, c) in rel.terms() {
            let is_unknown = w.len() == 2
                && is_reducible_pair(w.0[0], w.0[1])
                && inner.table.rule(w.0[0], w.0[1]).is_none();
            if is_unknown {
                let cur = row.unk.remove(w).unwrap_or_else(QRatFun::zero).add(c);
                if !cur.is_zero() {
                    row.unk.insert(w.clone(), cur);
                }
            } else {
                let nfw = inner.nf_word(w)?;
                row.rest.add_scaled(&nfw, c);
            }
        }
        if !row.unk.is_empty() || !row.rest.is_zero() {
            rows.push(row);
        }
    }
    // Gauss-Jordan elimination over the unknown columns.
    let mut pivots: BTreeMap<Word, Row> = BTreeMap::new();
    for mut row in rows {
        loop {
            let hit = row.unk.keys().find(|w| pivots.contains_key(*w)).cloned();
            match hit {
                None => break,
                Some(w) => {
                    let k = row.unk.get(&w).cloned().unwrap();
                    row.sub_scaled(pivots.get(&w).unwrap(), &k);
                }
            }
        }
        match row.unk.iter().next_back().map(|(w, c)| (w.clone(), c.clone())) {
            Some((w, c)) => {
                row.scale(&c.inv());
                // Eliminate the new pivot from settled rows.
                let keys: Vec<Word> = pivots
                    .iter()
                    .filter(|(_, r)| r.unk.contains_key(&w))
                    .map(|(k, _)| k.clone())
                    .collect();
                for key in keys {
                    let mut settled = pivots.remove(&key).unwrap();
                    let k = settled.unk.get(&w).cloned().unwrap();
                    settled.sub_scaled(&row, &k);
                    pivots.insert(key, settled);
                }
                pivots.insert(w, row);
            }
            None => {
                if !row.rest.is_zero() {
                    return Err(SynthError::Inconsistent {
                        degree: d,
                        residual: row.rest.to_string(),
                    });
                }
            }
        }
    }
    // Every reducible pair of this degree must have ended up pinned.
    for pair in reducible_pairs(family, n, d) {
        if inner.table.rule(pair.0[0], pair.0[1]).is_none() && !pivots.contains_key(&pair) {
            return Err(SynthError::Underdetermined { pair: pair.to_string(), degree: d });
        }
    }
    for (w, row) in pivots {
        debug_assert!(row.unk.len() == 1 && row.unk.contains_key(&w));
        inner.table.insert_rule(w.0[0], w.0[1], row.rest.neg());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Table caching
// ---------------------------------------------------------------------------

pub fn cache_file(dir: &Path, family: Family, n: u8, dmax: i64) -> PathBuf {
    dir.join(format!("{}-n{}-d{}.table", family.prefix(), n, dmax))
}

/// Build the algebra through `dmax`, reusing an on-disk table when present
/// and writing one back otherwise.
pub fn obtain(family: Family, n: u8, dmax: i64, cache_dir: Option<&Path>) -> Result<Algebra, SynthError> {
    if let Some(dir) = cache_dir {
        let path = cache_file(dir, family, n, dmax);
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(table) = RewriteTable::from_lines(&text) {
                if table.family == family && table.n == n && table.dmax >= dmax {
                    return Ok(Algebra::from_table(table));
                }
            }
        }
    }
    let alg = Algebra::new(family, n);
    alg.extend_to(dmax)?;
    if let Some(dir) = cache_dir {
        let _ = std::fs::create_dir_all(dir);
        let _ = std::fs::write(cache_file(dir, family, n, dmax), alg.table_lines());
    }
    Ok(alg)
}

// ---------------------------------------------------------------------------
// Embedding of the reflection algebra into the loop algebra
// ---------------------------------------------------------------------------

/// The image of s_{ij}^{(r)} inside the doubled loop algebra:
/// sum over a and over mode splits k + m = r of t_{ia}^{(k)} tbar_{ja}^{(m)},
/// in normal form.
pub fn embed_s(loop_alg: &Algebra, i: u8, j: u8, r: i64) -> Result<NCElem, SynthError> {
    assert!(matches!(loop_alg.family, Family::T | Family::Tbar));
    let n = loop_alg.n;
    let mut acc = NCElem::zero();
    for a in 1..=n {
        for k in 0..=r {
            let m = r - k;
            let lt = letter_subst(Family::T, i, a, k);
            let rt = letter_subst(Family::Tbar, j, a, m);
            let w = match (lt, rt) {
                (Subst::Zero, _) | (_, Subst::Zero) => continue,
                (Subst::Gen(x), Subst::Gen(y)) => Word::from_letters([x, y]),
                _ => unreachable!("loop letters are never substituted by 1"),
            };
            acc.add_term(w, QRatFun::one());
        }
    }
    loop_alg.nf(&acc)
}

/// Substitute the embedding into every reflection relation of top degree at
/// most dmax and reduce in the loop algebra; all must vanish.
pub fn check_embedding(n: u8, dmax: i64) -> Result<bool, SynthError> {
    let loop_alg = Algebra::new(Family::T, n);
    loop_alg.extend_to(dmax)?;
    let mut images: HashMap<GenSym, NCElem> = HashMap::new();
    for d in 0..=dmax {
        for rel in relations_at(Family::S, n, d) {
            let mut image = NCElem::zero();
            for (w, c) in rel.terms() {
                let mut cur = NCElem::scalar(c.clone());
                for g in &w.0 {
                    let img = match images.get(g) {
                        Some(x) => x.clone(),
                        None => {
                            let x = embed_s(&loop_alg, g.i(), g.j(), g.degree())?;
                            images.insert(*g, x.clone());
                            x
                        }
                    };
                    cur = loop_alg.nf_mul(&cur, &img)?;
                }
                image.add_assign(&cur);
            }
            if !image.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn s(i: u8, j: u8, r: u32) -> GenSym {
        GenSym::new(Family::S, i, j, r)
    }

    #[test]
    fn reflection_relations_mix_exactly_two_degrees() {
        for d in 1..=4 {
            for rel in relations_at(Family::S, 2, d) {
                let degs: std::collections::BTreeSet<i64> =
                    rel.terms().map(|(w, _)| w.degree()).collect();
                assert!(degs.iter().all(|&g| g == d || g == d - 2), "degrees {degs:?} at top {d}");
            }
        }
    }

    #[test]
    fn zero_mode_exchange_rules_synthesize_at_rank_three() {
        let alg = Algebra::new(Family::S, 3);
        alg.extend_to(0).unwrap();
        // [s_21^(0), s_32^(0)]_q = (1/q - q) s_31^(0).
        let mut lhs = NCElem::from_word(Word::from_letters([s(2, 1, 0), s(3, 2, 0)]));
        lhs.add_term(Word::from_letters([s(3, 2, 0), s(2, 1, 0)]), QRatFun::q().neg());
        lhs.add_term(Word::letter(s(3, 1, 0)), qdm().neg());
        assert!(alg.nf(&lhs).unwrap().is_zero());
    }

    #[test]
    fn series_zero_mode_exchange_holds_coefficientwise() {
        let alg = Algebra::new(Family::S, 3);
        alg.extend_to(3).unwrap();
        for r in 0..=3u32 {
            // [s_12(u), s_32^(0)]_q = (1/q - q) s_13(u) at u^{-r}.
            let mut rel = NCElem::zero();
            let s12 = letter_subst(Family::S, 1, 2, r as i64);
            if let Subst::Gen(g) = s12 {
                rel.add_term(Word::from_letters([g, s(3, 2, 0)]), QRatFun::one());
                rel.add_term(Word::from_letters([s(3, 2, 0), g]), QRatFun::q().neg());
            }
            if let Subst::Gen(g13) = letter_subst(Family::S, 1, 3, r as i64) {
                rel.add_term(Word::letter(g13), qdm().neg());
            }
            assert!(alg.nf(&rel).unwrap().is_zero(), "r = {r}");
            // [s_21(u), s_32^(0)]_q = (1/q - q) s_31(u) at u^{-r}.
            let mut rel = NCElem::zero();
            let g21 = s(2, 1, r);
            rel.add_term(Word::from_letters([g21, s(3, 2, 0)]), QRatFun::one());
            rel.add_term(Word::from_letters([s(3, 2, 0), g21]), QRatFun::q().neg());
            rel.add_term(Word::letter(s(3, 1, r)), qdm().neg());
            assert!(alg.nf(&rel).unwrap().is_zero(), "r = {r}");
        }
    }

    #[test]
    fn every_extracted_relation_reduces_to_zero() {
        let alg = Algebra::new(Family::S, 2);
        alg.extend_to(4).unwrap();
        for d in 0..=4 {
            for rel in relations_at(Family::S, 2, d) {
                let nf = alg.nf(&rel).unwrap();
                assert!(nf.is_zero(), "degree {d}: {rel} -> {nf}");
            }
        }
    }

    #[test]
    fn graded_dimensions_match_ordered_word_counts_rank_two() {
        let alg = Algebra::new(Family::S, 2);
        for len in 1..=2usize {
            for d in 0..=3i64 {
                let (rank, count) = alg.graded_dimension(len, d).unwrap();
                assert_eq!(rank, count, "len {len} degree {d}");
            }
        }
    }

    #[test]
    fn confluence_probe_short_words() {
        let alg = Algebra::new(Family::S, 2);
        assert!(alg.confluence_probe(3, 2, 100_000).unwrap());
    }

    #[test]
    fn loop_algebra_unit_pairs_and_synthesis() {
        let alg = Algebra::new(Family::T, 2);
        alg.extend_to(2).unwrap();
        let t0 = GenSym::new(Family::T, 1, 1, 0);
        let tb0 = GenSym::new(Family::Tbar, 1, 1, 0);
        // Both adjacencies of the inverse pair collapse to 1.
        let w1 = NCElem::from_word(Word::from_letters([t0, tb0]));
        let w2 = NCElem::from_word(Word::from_letters([tb0, t0]));
        assert_eq!(alg.nf(&w1).unwrap(), NCElem::one());
        assert_eq!(alg.nf(&w2).unwrap(), NCElem::one());
        // Every loop relation through degree 2 normal-forms to zero.
        for d in 0..=2 {
            for rel in relations_at(Family::T, 2, d) {
                assert!(alg.nf(&rel).unwrap().is_zero(), "degree {d}: {rel}");
            }
        }
    }

    #[test]
    fn embedding_satisfies_reflection_relations_rank_two() {
        assert!(check_embedding(2, 2).unwrap());
    }

    #[test]
    fn table_cache_roundtrip_and_determinism() {
        let a1 = Algebra::new(Family::S, 2);
        a1.extend_to(3).unwrap();
        let a2 = Algebra::new(Family::S, 2);
        a2.extend_to(3).unwrap();
        assert_eq!(a1.table_lines(), a2.table_lines());
        let parsed = RewriteTable::from_lines(&a1.table_lines()).unwrap();
        assert_eq!(parsed.to_lines(), a1.table_lines());
        let dir = std::env::temp_dir().join("qyangian-test-cache");
        let _ = std::fs::remove_dir_all(&dir);
        let b1 = obtain(Family::S, 2, 3, Some(&dir)).unwrap();
        let b2 = obtain(Family::S, 2, 3, Some(&dir)).unwrap();
        assert_eq!(b1.table_lines(), b2.table_lines());
        assert_eq!(b1.table_lines(), a1.table_lines());
    }
}
