//! The q = 1 degeneration: reflection generators specialize into the
//! fixed-point subalgebra of the loop algebra under X(z) -> -X(1/z)
//! transposed, whose enveloping algebra carries an ordinary PBW basis.
//!
//! The bridge is `specialize`: rescale every letter by 1/(q - 1/q), find the
//! lowest order of vanishing at q = 1 across the element, and read off that
//! layer with letters mapped to antisymmetrized loop matrix units.  The layer
//! of a defining relation must vanish after straightening; the layers of the
//! Gauss current coefficients must hit the predicted loop units; and the
//! layers of ordered monomials in the current modes must stay linearly
//! independent, which witnesses the PBW property upstairs.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::path::Path;

use crate::gauss::{reduced_currents, Currents};
use crate::ncalg::{Family, NCElem};
use crate::presentations::{obtain, relations_at, SynthError};
use crate::scalars::{qr, QRatFun, QRational};

// ---------------------------------------------------------------------------
// The fixed-point loop Lie algebra
// ---------------------------------------------------------------------------

/// Canonical basis symbol xi_{ij,r} = e_ij z^r - e_ji z^{-r} of the
/// fixed-point subalgebra: indexed by r > 0 with any i, j, or by r = 0 with
/// i > j.  The derived order is internal to the straightening; the
/// user-facing generator order lives with the rank check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct XiSym {
    pub r: i64,
    pub i: u8,
    pub j: u8,
}

impl XiSym {
    pub fn new(i: u8, j: u8, r: i64) -> XiSym {
        assert!(r > 0 || (r == 0 && i > j), "not a canonical index");
        XiSym { r, i, j }
    }
}

/// Loop-algebra element as rational combination of matrix units e_ij z^r.
type Loop = BTreeMap<(u8, u8, i64), QRational>;

fn loop_add(acc: &mut Loop, key: (u8, u8, i64), c: QRational) {
    if c == qr(0) {
        return;
    }
    match acc.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get() == &qr(0) {
                o.remove();
            }
        }
    }
}

/// [e_ab z^r, e_cd z^s] = delta_bc e_ad z^{r+s} - delta_da e_cb z^{r+s}.
fn loop_bracket(x: &Loop, y: &Loop) -> Loop {
    let mut out = Loop::new();
    for ((a, b, r), cx) in x {
        for ((c, d, s), cy) in y {
            let w = cx * cy;
            if b == c {
                loop_add(&mut out, (*a, *d, r + s), w.clone());
            }
            if d == a {
                loop_add(&mut out, (*c, *b, r + s), -w);
            }
        }
    }
    out
}

fn xi_loop(x: XiSym) -> Loop {
    let mut l = Loop::new();
    loop_add(&mut l, (x.i, x.j, x.r), qr(1));
    loop_add(&mut l, (x.j, x.i, -x.r), qr(-1));
    l
}

/// Decompose a fixed-point element in the canonical basis; panics if the
/// element is not actually fixed by the involution.
fn loop_to_xi(l: &Loop) -> BTreeMap<XiSym, QRational> {
    let mut out = BTreeMap::new();
    for ((a, b, r), c) in l {
        if *r > 0 || (*r == 0 && a > b) {
            out.insert(XiSym::new(*a, *b, *r), c.clone());
        }
    }
    // The skipped entries are determined by the kept ones; verify.
    let mut recon = Loop::new();
    for (x, c) in &out {
        for (k, v) in xi_loop(*x) {
            loop_add(&mut recon, k, v * c);
        }
    }
    assert_eq!(&recon, l, "element is not fixed by the involution");
    out
}

// ---------------------------------------------------------------------------
// The enveloping algebra
// ---------------------------------------------------------------------------

/// Enveloping-algebra element: rational combination of weakly increasing
/// words in the canonical basis symbols.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct UElem {
    terms: BTreeMap<Vec<XiSym>, QRational>,
}

impl UElem {
    pub fn zero() -> UElem {
        UElem::default()
    }

    pub fn one() -> UElem {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), qr(1));
        UElem { terms }
    }

    pub fn from_xi(x: XiSym) -> UElem {
        let mut terms = BTreeMap::new();
        terms.insert(vec![x], qr(1));
        UElem { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<XiSym>, &QRational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, w: Vec<XiSym>, c: QRational) {
        if c == qr(0) {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get() == &qr(0) {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &UElem) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &QRational) -> UElem {
        if c == &qr(0) {
            return UElem::zero();
        }
        UElem { terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    pub fn sub(&self, other: &UElem) -> UElem {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &UElem) -> UElem {
        let mut out = UElem::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                let s = straighten(&w);
                for (sw, sc) in &s.terms {
                    out.add_term(sw.clone(), sc * ca * cb);
                }
            }
        }
        out
    }
}

/// PBW straightening: swap the first descent, xy = yx + [x, y], and recurse.
/// Terminates because a swap removes an inversion and a bracket shortens the
/// word.
fn straighten(w: &[XiSym]) -> UElem {
    for k in 0..w.len().saturating_sub(1) {
        if w[k] <= w[k + 1] {
            continue;
        }
        let mut swapped = w.to_vec();
        swapped.swap(k, k + 1);
        let mut out = straighten(&swapped);
        let br = loop_to_xi(&loop_bracket(&xi_loop(w[k]), &xi_loop(w[k + 1])));
        for (x, c) in br {
            let mut shorter = Vec::with_capacity(w.len() - 1);
            shorter.extend_from_slice(&w[..k]);
            shorter.push(x);
            shorter.extend_from_slice(&w[k + 2..]);
            out.add_assign(&straighten(&shorter).scale(&c));
        }
        return out;
    }
    let mut out = UElem::zero();
    out.add_term(w.to_vec(), qr(1));
    out
}

// ---------------------------------------------------------------------------
// Specialization
// ---------------------------------------------------------------------------

/// Lowest q = 1 layer of an element after rescaling every letter by
/// 1/(q - 1/q): returns the layer straightened in the enveloping algebra and
/// the order at which it sits.  The zero element reports order 0.  The shift
/// is by the minimum order over the terms, so no term can sit at a pole.
pub fn specialize(e: &NCElem) -> (UElem, i64) {
    let scale = QRatFun::qdiff();
    let mut parts: Vec<(Vec<XiSym>, QRatFun)> = Vec::new();
    let mut min_ord: Option<i64> = None;
    for (w, c) in e.terms() {
        let a = c.mul(&scale.pow(w.len() as i64));
        let Some(o) = a.ord_one() else { continue };
        min_ord = Some(min_ord.map_or(o, |m: i64| m.min(o)));
        let mut xs = Vec::with_capacity(w.len());
        for g in &w.0 {
            let (i, j, r) = (g.i(), g.j(), g.r() as i64);
            assert!(r > 0 || i > j, "letter outside the rescaled generating set");
            xs.push(XiSym::new(i, j, r));
        }
        parts.push((xs, a));
    }
    let Some(m) = min_ord else {
        return (UElem::zero(), 0);
    };
    let mut out = UElem::zero();
    for (xs, a) in parts {
        let v = a.eval_one_shifted(m).expect("no pole below the minimal layer");
        if v == qr(0) {
            continue;
        }
        out.add_assign(&straighten(&xs).scale(&v));
    }
    (out, m)
}

/// The expected image of a two-sided mode: e_ji z^r - e_ij z^{-r} in
/// canonical form, for any sign of r (with j > i).
pub fn xi_elem(j: u8, i: u8, r: i64) -> UElem {
    assert!(j > i);
    if r >= 0 {
        UElem::from_xi(XiSym::new(j, i, r))
    } else {
        UElem::from_xi(XiSym::new(i, j, -r)).scale(&qr(-1))
    }
}

/// The expected image of a Cartan mode at node k >= 1:
/// (e_{k+1,k+1} - e_kk)(z^m - z^{-m}); node 0 gives e_11 (z^m - z^{-m}).
pub fn xi_cartan(k: u8, m: i64) -> UElem {
    assert!(m > 0);
    if k == 0 {
        UElem::from_xi(XiSym::new(1, 1, m))
    } else {
        UElem::from_xi(XiSym::new(k + 1, k + 1, m))
            .sub(&UElem::from_xi(XiSym::new(k, k, m)))
    }
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

/// The long two-sided mode B_{ji,r} read off the Gauss factors: lowering
/// coefficients for r >= 0, raising ones for r < 0, with the argument shift
/// governed by the inner index.
pub fn long_b(cur: &Currents, j: usize, i: usize, r: i64) -> NCElem {
    assert!(1 <= i && i < j && j <= cur.n);
    let norm = QRatFun::qdiff().inv();
    let ii = i as i64;
    if r >= 0 {
        let fr = cur.gauss.f[&(j - 1, i - 1)].coeff_exact(-r);
        fr.scale(&QRatFun::qpow(ii * r).mul(&norm))
    } else {
        let em = cur.gauss.e[&(i - 1, j - 1)].coeff_exact(r);
        em.scale(&QRatFun::qpow(-ii * r - 1).mul(&norm).neg())
    }
}

/// Specialization checks: defining relations drop to the fixed-point loop
/// algebra, and every current family lands on its predicted loop unit.
pub fn check_images(
    n: u8,
    dmax: i64,
    cache: Option<&Path>,
) -> Result<Vec<(String, bool)>, SynthError> {
    let window = dmax;
    let alg = obtain(Family::S, n, 2 * window, cache)?;
    let cur = reduced_currents(n, window, &alg)?;
    let nn = n as usize;
    let mut out: Vec<(String, bool)> = Vec::new();

    // Every defining relation through degree dmax specializes to zero.
    {
        let mut ok = true;
        let mut count = 0usize;
        for d in 0..=dmax {
            for rel in relations_at(Family::S, n, d) {
                count += 1;
                let (layer, _) = specialize(&rel);
                ok = ok && layer.is_zero();
            }
        }
        out.push(("defining relations specialize to zero".into(), ok && count > 0));
    }

    // Lowering, raising, and diagonal Gauss coefficients land on the
    // antisymmetrized loop units.
    {
        let mut ok = true;
        let norm = QRatFun::qdiff().inv();
        for j in 1..=nn {
            for i in 1..j {
                for r in 0..=window {
                    let el = cur.gauss.f[&(j - 1, i - 1)].coeff_exact(-r).scale(&norm);
                    let (layer, ord) = specialize(&el);
                    ok = ok
                        && ord == 0
                        && layer == UElem::from_xi(XiSym::new(j as u8, i as u8, r));
                }
                for m in 1..=window {
                    let el = cur.gauss.e[&(i - 1, j - 1)].coeff_exact(-m).scale(&norm);
                    let (layer, ord) = specialize(&el);
                    ok = ok
                        && ord == 0
                        && layer == UElem::from_xi(XiSym::new(i as u8, j as u8, m));
                }
            }
        }
        for k in 1..=nn {
            for m in 1..=window {
                let el = cur.gauss.d[k - 1].coeff_exact(-m).scale(&norm);
                let (layer, ord) = specialize(&el);
                ok = ok && ord == 0 && layer == UElem::from_xi(XiSym::new(k as u8, k as u8, m));
            }
        }
        out.push(("gauss factors specialize to loop units".into(), ok));
    }

    // Two-sided modes at every node, both signs.
    {
        let mut ok = true;
        for i in 1..nn {
            for r in -window..=window {
                let (layer, ord) = specialize(&cur.b(i, r));
                ok = ok && ord == 0 && layer == xi_elem(i as u8 + 1, i as u8, r);
            }
        }
        out.push(("two-sided modes specialize to loop units".into(), ok));
    }

    // Cartan modes, node 0 included.
    {
        let mut ok = true;
        let norm = QRatFun::qdiff().inv();
        for k in 0..nn {
            for m in 1..=window {
                let el = cur.theta_acc_coeff(k, m).scale(&norm);
                let (layer, ord) = specialize(&el);
                ok = ok && ord == 0 && layer == xi_cartan(k as u8, m);
            }
        }
        out.push(("cartan modes specialize to difference units".into(), ok));
    }

    // Long two-sided modes and their q-bracket recursion:
    // B_{ji,r} = [B_{j-1,0}, B_{j-1,i,r}]_q whenever j - i >= 2, exactly.
    {
        let mut ok = true;
        for j in 1..=nn {
            for i in 1..j {
                for r in -window..=window {
                    let el = long_b(&cur, j, i, r);
                    let (layer, ord) = specialize(&el);
                    ok = ok && ord == 0 && layer == xi_elem(j as u8, i as u8, r);
                }
            }
        }
        out.push(("long two-sided modes specialize to loop units".into(), ok));
        let q = QRatFun::q();
        let mut ok = true;
        let mut any = false;
        for j in 3..=nn {
            for i in 1..=j - 2 {
                for r in -window..=window {
                    any = true;
                    let head = cur.b(j - 1, 0);
                    let tail = long_b(&cur, j - 1, i, r);
                    let br = alg
                        .nf_mul(&head, &tail)?
                        .sub(&alg.nf_mul(&tail, &head)?.scale(&q));
                    ok = ok && br.sub(&long_b(&cur, j, i, r)).is_zero();
                }
            }
        }
        out.push((
            if any {
                "long modes satisfy the bracket recursion".into()
            } else {
                "long modes satisfy the bracket recursion (vacuous at this rank)".into()
            },
            ok,
        ));
    }

    Ok(out)
}

/// Linear independence of the specialized ordered monomials of length at
/// most 2 in the Cartan modes (1 <= m <= mmax, all nodes including 0) and
/// the two-sided modes (|r| <= rmax, all pairs j > i).  Cartan generators
/// precede two-sided ones; two-sided generators are ordered by inner index
/// descending, then outer index descending, then mode descending.
pub fn pbw_rank_check(
    n: u8,
    rmax: i64,
    mmax: i64,
    cache: Option<&Path>,
) -> Result<bool, SynthError> {
    let window = rmax.max(mmax);
    let alg = obtain(Family::S, n, 4 * window, cache)?;
    let cur = reduced_currents(n, window, &alg)?;
    let nn = n as usize;

    // Generator list in ascending order.
    let mut gens: Vec<NCElem> = Vec::new();
    let norm = QRatFun::qdiff().inv();
    for k in 0..nn {
        for m in 1..=mmax {
            gens.push(cur.theta_acc_coeff(k, m).scale(&norm));
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 1..=nn {
        for j in i + 1..=nn {
            pairs.push((j, i));
        }
    }
    // Ascending in the order: larger inner index first, then larger outer
    // index, then larger mode.
    pairs.sort_by(|a, b| b.1.cmp(&a.1).then(b.0.cmp(&a.0)));
    for (j, i) in pairs {
        for r in (-rmax..=rmax).rev() {
            gens.push(long_b(&cur, j, i, r));
        }
    }

    // Ordered monomials of length <= 2.
    let mut monos: Vec<NCElem> = vec![NCElem::one()];
    for g in &gens {
        monos.push(g.clone());
    }
    for a in 0..gens.len() {
        for b in a..gens.len() {
            monos.push(alg.nf_mul(&gens[a], &gens[b])?);
        }
    }

    // Rank of the specialized layers by exact elimination.
    let mut rows: Vec<BTreeMap<Vec<XiSym>, QRational>> = Vec::new();
    for m in &monos {
        let (layer, _) = specialize(m);
        if layer.is_zero() {
            return Ok(false);
        }
        rows.push(layer.terms().map(|(w, c)| (w.clone(), c.clone())).collect());
    }
    let total = rows.len();
    let mut rank = 0usize;
    let mut pivots: Vec<(Vec<XiSym>, BTreeMap<Vec<XiSym>, QRational>)> = Vec::new();
    for mut row in rows {
        for (pw, pr) in &pivots {
            if let Some(c) = row.get(pw).cloned() {
                for (w, v) in pr {
                    let slot = row.entry(w.clone()).or_insert_with(|| qr(0));
                    *slot -= &c * v;
                    if slot == &qr(0) {
                        row.remove(w);
                    }
                }
            }
        }
        if let Some((pw, pc)) = row.iter().next_back().map(|(w, c)| (w.clone(), c.clone())) {
            let normed: BTreeMap<Vec<XiSym>, QRational> =
                row.into_iter().map(|(w, c)| (w, c / &pc)).collect();
            pivots.push((pw, normed));
            rank += 1;
        }
    }
    Ok(rank == total)
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_bracket_matches_matrix_units() {
        // [e_12 z, e_21 z^-1] = e_11 - e_22.
        let mut x = Loop::new();
        loop_add(&mut x, (1, 2, 1), qr(1));
        let mut y = Loop::new();
        loop_add(&mut y, (2, 1, -1), qr(1));
        let br = loop_bracket(&x, &y);
        let mut expect = Loop::new();
        loop_add(&mut expect, (1, 1, 0), qr(1));
        loop_add(&mut expect, (2, 2, 0), qr(-1));
        assert_eq!(br, expect);
    }

    #[test]
    fn straighten_is_a_pbw_rewrite() {
        // xy = yx + [x, y] for a descending pair; both sides straightened.
        let x = XiSym::new(2, 1, 1);
        let y = XiSym::new(2, 1, 0);
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        let prod = UElem::from_xi(hi).mul(&UElem::from_xi(lo));
        let swapped = UElem::from_xi(lo).mul(&UElem::from_xi(hi));
        let br = loop_to_xi(&loop_bracket(&xi_loop(hi), &xi_loop(lo)));
        let mut expect = swapped;
        for (s, c) in br {
            expect.add_assign(&UElem::from_xi(s).scale(&c));
        }
        assert_eq!(prod, expect);
    }

    #[test]
    fn specialize_reads_the_lowest_layer() {
        // A single letter scaled by 1/(q - 1/q) sits at order zero and maps
        // to its loop unit.
        let g = crate::ncalg::GenSym::new(Family::S, 2, 1, 0);
        let el = NCElem::from_letter(g).scale(&QRatFun::qdiff().inv());
        let (layer, ord) = specialize(&el);
        assert_eq!(ord, 0);
        assert_eq!(layer, UElem::from_xi(XiSym::new(2, 1, 0)));
    }

    #[test]
    fn long_b_agrees_with_the_simple_two_sided_modes() {
        // At adjacent indices the direct coefficient formula must reproduce
        // the shifted-argument current accessor.
        let alg = obtain(Family::S, 2, 4, None).unwrap();
        let cur = reduced_currents(2, 2, &alg).unwrap();
        for r in -2..=2 {
            assert_eq!(long_b(&cur, 2, 1, r), cur.b(1, r), "mode {}", r);
        }
    }

    #[test]
    fn images_check_rank_two() {
        let checks = check_images(2, 2, None).unwrap();
        assert!(!checks.is_empty());
        for (name, ok) in checks {
            assert!(ok, "failed: {}", name);
        }
    }

    #[test]
    fn pbw_rank_small() {
        assert!(pbw_rank_check(2, 1, 1, None).unwrap());
    }

    #[test]
    fn dependent_rows_fail_the_rank_check() {
        // Sanity for the elimination: duplicated generator layers collapse.
        let x = UElem::from_xi(XiSym::new(2, 1, 1));
        let rows = [x.clone(), x.clone()];
        let mut pivots: Vec<(Vec<XiSym>, BTreeMap<Vec<XiSym>, QRational>)> = Vec::new();
        let mut rank = 0usize;
        for r in &rows {
            let mut row: BTreeMap<Vec<XiSym>, QRational> =
                r.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
            for (pw, pr) in &pivots {
                if let Some(c) = row.get(pw).cloned() {
                    for (w, v) in pr {
                        let slot = row.entry(w.clone()).or_insert_with(|| qr(0));
                        *slot -= &c * v;
                        if slot == &qr(0) {
                            row.remove(w);
                        }
                    }
                }
            }
            if let Some((pw, pc)) = row.iter().next_back().map(|(w, c)| (w.clone(), c.clone())) {
                let normed: BTreeMap<Vec<XiSym>, QRational> =
                    row.into_iter().map(|(w, c)| (w, c / &pc)).collect();
                pivots.push((pw, normed));
                rank += 1;
            }
        }
        assert_eq!(rank, 1);
    }
}
