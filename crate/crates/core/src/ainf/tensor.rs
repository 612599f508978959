//! Basis tensors of `Ā[1]^{⊗n}` and `Ā[1]^{⊗n} ⊗ G`, and the application
//! of structure maps to them with Koszul signs.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::gradedring::{Poly, PolyMatrix, RingCtx};
use crate::resolve::GradedComplex;

/// A basis tensor: algebra slots `(homological degree, generator)` and an
/// optional trailing module slot.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub alg: Vec<(usize, usize)>,
    pub module: Option<(usize, usize)>,
}

impl Key {
    pub fn word(&self) -> Vec<usize> {
        self.alg.iter().map(|s| s.0).collect()
    }

    /// Degree in the shifted grading: each algebra slot `A_i` sits in `i + 1`.
    pub fn shifted_degree(&self) -> usize {
        self.alg.iter().map(|s| s.0 + 1).sum::<usize>() + self.module.map_or(0, |m| m.0)
    }

    pub fn internal_degree(&self, a: &GradedComplex, g: Option<&GradedComplex>) -> u32 {
        let mut d: u32 = self.alg.iter().map(|&(i, k)| a.module(i).degree(k)).sum();
        if let (Some((j, k)), Some(g)) = (self.module, g) {
            d += g.module(j).degree(k);
        }
        d
    }
}

/// A `Q`-linear combination of basis tensors.
pub type Elem = BTreeMap<Key, Poly>;

pub fn add_term(e: &mut Elem, k: Key, p: Poly, ctx: &RingCtx) {
    if p.is_zero() {
        return;
    }
    match e.get_mut(&k) {
        Some(cur) => {
            *cur = cur.add(&p, ctx.field());
            if cur.is_zero() {
                e.remove(&k);
            }
        }
        None => {
            e.insert(k, p);
        }
    }
}

pub fn add_elem(e: &mut Elem, other: &Elem, c: u32, ctx: &RingCtx) {
    for (k, p) in other {
        add_term(e, k.clone(), p.scale(c, ctx.field()), ctx);
    }
}

pub fn single(k: Key) -> Elem {
    let mut e = Elem::new();
    e.insert(k, Poly::constant(1));
    e
}

/// Mixed-radix index of a generator tuple, last slot fastest.
pub fn tuple_index(ranks: &[usize], gens: &[usize]) -> usize {
    let mut idx = 0;
    for (r, g) in ranks.iter().zip(gens) {
        idx = idx * r + g;
    }
    idx
}

/// Inverse of [`tuple_index`].
pub fn tuple_of(ranks: &[usize], mut idx: usize) -> Vec<usize> {
    let mut out = alloc::vec![0; ranks.len()];
    for t in (0..ranks.len()).rev() {
        out[t] = idx % ranks[t];
        idx /= ranks[t];
    }
    out
}

/// All basis keys on an algebra word (and module slot).
pub fn keys_of(a: &GradedComplex, word: &[usize], g: Option<(&GradedComplex, usize)>) -> Vec<Key> {
    let mut ranks: Vec<usize> = word.iter().map(|&i| a.rank(i)).collect();
    if let Some((gc, j)) = g {
        ranks.push(gc.rank(j));
    }
    let total: usize = ranks.iter().product();
    (0..total)
        .map(|idx| {
            let t = tuple_of(&ranks, idx);
            let alg = word.iter().zip(&t).map(|(&i, &k)| (i, k)).collect();
            let module = g.map(|(_, j)| (j, t[word.len()]));
            Key { alg, module }
        })
        .collect()
}

/// Read access to structure maps. `m_1` is `-d` on `A_i` (`i >= 2`), zero on
/// `A_1`; `m_1^G = d^G`.
pub trait StructureMaps {
    fn a(&self) -> &GradedComplex;
    fn g(&self) -> Option<&GradedComplex>;
    /// `m_n` on an algebra word, `n = word.len()`, mapping into `A_J`.
    fn alg_block(&self, word: &[usize]) -> Option<&PolyMatrix>;
    /// `m_n^G` on `word ⊗ G_g`, `n = word.len() + 1`, mapping into `G_J`.
    fn mod_block(&self, word: &[usize], g: usize) -> Option<&PolyMatrix>;
}

pub fn alg_target(word: &[usize]) -> usize {
    word.iter().sum::<usize>() + word.len() - 2
}

pub fn mod_target(word: &[usize], g: usize) -> usize {
    word.iter().sum::<usize>() + g + word.len() + 1 - 2
}

fn prefix_sign(key: &Key, pos: usize) -> bool {
    key.alg[..pos].iter().map(|s| s.0 + 1).sum::<usize>() % 2 == 1
}

/// Applies `m_len` to algebra slots `pos..pos+len` of every term.
pub fn apply_alg<S: StructureMaps + ?Sized>(
    s: &S,
    ctx: &RingCtx,
    e: &Elem,
    pos: usize,
    len: usize,
) -> Elem {
    let f = ctx.field();
    let mut out = Elem::new();
    for (key, coef) in e {
        if key.alg.len() < pos + len {
            continue;
        }
        let slots = &key.alg[pos..pos + len];
        let word: Vec<usize> = slots.iter().map(|s| s.0).collect();
        let Some(block) = s.alg_block(&word) else {
            continue;
        };
        let ranks: Vec<usize> = word.iter().map(|&i| s.a().rank(i)).collect();
        let gens: Vec<usize> = slots.iter().map(|s| s.1).collect();
        let col = tuple_index(&ranks, &gens);
        let j = if len == 1 {
            word[0] - 1
        } else {
            alg_target(&word)
        };
        let c = if prefix_sign(key, pos) {
            coef.neg(f)
        } else {
            coef.clone()
        };
        for (r, p) in block.column(col) {
            let mut alg = Vec::with_capacity(key.alg.len() + 1 - len);
            alg.extend_from_slice(&key.alg[..pos]);
            alg.push((j, *r));
            alg.extend_from_slice(&key.alg[pos + len..]);
            add_term(
                &mut out,
                Key {
                    alg,
                    module: key.module,
                },
                c.mul(p, f),
                ctx,
            );
        }
    }
    out
}

/// Applies `m_{k+1}^G` to the last `k` algebra slots and the module slot,
/// where `pos = #alg - k`.
pub fn apply_mod<S: StructureMaps + ?Sized>(s: &S, ctx: &RingCtx, e: &Elem, pos: usize) -> Elem {
    let f = ctx.field();
    let mut out = Elem::new();
    let Some(gc) = s.g() else { return out };
    for (key, coef) in e {
        let Some((gj, gk)) = key.module else { continue };
        if key.alg.len() < pos {
            continue;
        }
        let slots = &key.alg[pos..];
        let word: Vec<usize> = slots.iter().map(|s| s.0).collect();
        let Some(block) = s.mod_block(&word, gj) else {
            continue;
        };
        let mut ranks: Vec<usize> = word.iter().map(|&i| s.a().rank(i)).collect();
        ranks.push(gc.rank(gj));
        let mut gens: Vec<usize> = slots.iter().map(|s| s.1).collect();
        gens.push(gk);
        let col = tuple_index(&ranks, &gens);
        let j = if word.is_empty() {
            gj - 1
        } else {
            mod_target(&word, gj)
        };
        let c = if prefix_sign(key, pos) {
            coef.neg(f)
        } else {
            coef.clone()
        };
        for (r, p) in block.column(col) {
            let alg = key.alg[..pos].to_vec();
            add_term(
                &mut out,
                Key {
                    alg,
                    module: Some((j, *r)),
                },
                c.mul(p, f),
                ctx,
            );
        }
    }
    out
}

/// The differential of `Ā[1]^{⊗n} (⊗ G)`: `m_1` (or `m_1^G`) at every slot.
pub fn tensor_differential<S: StructureMaps + ?Sized>(s: &S, ctx: &RingCtx, e: &Elem) -> Elem {
    let mut out = Elem::new();
    let n = e.keys().map(|k| k.alg.len()).max().unwrap_or(0);
    for pos in 0..n {
        let t = apply_alg(s, ctx, e, pos, 1);
        add_elem(&mut out, &t, 1, ctx);
    }
    let t = apply_mod_tail(s, ctx, e, 0);
    add_elem(&mut out, &t, 1, ctx);
    out
}

/// Applies the module map consuming the last `k` algebra slots of each term
/// (terms with fewer slots are skipped).
pub fn apply_mod_tail<S: StructureMaps + ?Sized>(s: &S, ctx: &RingCtx, e: &Elem, k: usize) -> Elem {
    let mut out = Elem::new();
    let mut by_len: BTreeMap<usize, Elem> = BTreeMap::new();
    for (key, p) in e {
        if key.module.is_some() && key.alg.len() >= k {
            by_len
                .entry(key.alg.len())
                .or_default()
                .insert(key.clone(), p.clone());
        }
    }
    for (len, part) in by_len {
        let t = apply_mod(s, ctx, &part, len - k);
        add_elem(&mut out, &t, 1, ctx);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_roundtrip() {
        let ranks = [5, 3, 2];
        for i in 0..30 {
            assert_eq!(tuple_index(&ranks, &tuple_of(&ranks, i)), i);
        }
        assert_eq!(tuple_index(&ranks, &[1, 0, 1]), 7);
    }

    #[test]
    fn targets() {
        assert_eq!(alg_target(&[1, 1]), 2);
        assert_eq!(alg_target(&[1, 1, 1]), 4);
        assert_eq!(mod_target(&[1, 1], 0), 3);
        assert_eq!(mod_target(&[1], 0), 1);
    }
}
