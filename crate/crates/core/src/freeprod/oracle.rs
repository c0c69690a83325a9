//! Factor groups behind a small operational interface.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of a single factor group.
///
/// `Free` stores a freely reduced word with letters `±(j+1)` for basis
/// element `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Elem {
    Fin(u32),
    Int(i64),
    Free(Vec<i32>),
}

/// Factor declaration as it appears in a factors config.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FactorSpec {
    FiniteTable {
        table: Vec<Vec<u32>>,
        gens: Vec<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    /// Shorthand for the finite table of Z/n with generator 1.
    Cyclic { order: u32 },
    CyclicZ,
    Free { rank: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorKind {
    FiniteTable,
    InfiniteCyclic,
    Free,
}

#[derive(Clone, Debug)]
struct FiniteData {
    table: Vec<Vec<u32>>,
    identity: u32,
    inverse: Vec<u32>,
    dist: Vec<u32>,
    spelling: Vec<Vec<u16>>,
}

#[derive(Clone, Debug)]
enum Repr {
    Finite(FiniteData),
    Z,
    Free(usize),
}

#[derive(Clone, Debug)]
pub struct FactorOracle {
    pub id: usize,
    spec: FactorSpec,
    repr: Repr,
    names: Vec<String>,
    gen_elems: Vec<Elem>,
    inv: Vec<u16>,
}

fn letter_names(k: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(2 * k);
    for j in 0..k {
        if j < 13 {
            let c = (b'a' + j as u8) as char;
            out.push(c.to_string());
            out.push(c.to_ascii_uppercase().to_string());
        } else {
            out.push(format!("x{j}"));
            out.push(format!("X{j}"));
        }
    }
    out
}

fn cyclic_table(n: u32) -> Vec<Vec<u32>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

fn free_mul(a: &[i32], b: &[i32]) -> Vec<i32> {
    let mut out = a.to_vec();
    for &x in b {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

impl FactorOracle {
    pub fn new(id: usize, spec: FactorSpec) -> Result<Self> {
        match &spec {
            FactorSpec::CyclicZ => Ok(FactorOracle {
                id,
                repr: Repr::Z,
                names: vec!["a".into(), "A".into()],
                gen_elems: vec![Elem::Int(1), Elem::Int(-1)],
                inv: vec![1, 0],
                spec,
            }),
            FactorSpec::Free { rank } => {
                let rank = *rank;
                if rank == 0 {
                    return Err(Error::InvalidInput(format!("factor {id}: free group of rank 0 is trivial")));
                }
                let mut gen_elems = Vec::new();
                let mut inv = Vec::new();
                for j in 0..rank {
                    let x = j as i32 + 1;
                    gen_elems.push(Elem::Free(vec![x]));
                    gen_elems.push(Elem::Free(vec![-x]));
                    inv.push((2 * j + 1) as u16);
                    inv.push((2 * j) as u16);
                }
                Ok(FactorOracle { id, repr: Repr::Free(rank), names: letter_names(rank), gen_elems, inv, spec })
            }
            FactorSpec::Cyclic { order } => {
                if *order < 2 {
                    return Err(Error::InvalidInput(format!("factor {id}: cyclic group of order {order} is trivial")));
                }
                let table = cyclic_table(*order);
                Self::finite(id, spec.clone(), table, vec![1], None)
            }
            FactorSpec::FiniteTable { table, gens, names } => {
                Self::finite(id, spec.clone(), table.clone(), gens.clone(), names.clone())
            }
        }
    }

    fn finite(
        id: usize,
        spec: FactorSpec,
        table: Vec<Vec<u32>>,
        gens: Vec<u32>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = table.len();
        let bad = |m: String| Error::Malformed(format!("factor {id}: {m}"));
        if n < 2 {
            return Err(Error::InvalidInput(format!("factor {id}: finite table must have at least 2 elements")));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x as usize >= n) {
                return Err(bad("table is not square over 0..n".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] as usize == x && table[x][e] as usize == x))
            .ok_or_else(|| bad("no identity element".into()))? as u32;
        let mut inverse = vec![u32::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if table[a][b] == identity {
                    inverse[a] = b as u32;
                    break;
                }
            }
            if inverse[a] == u32::MAX {
                return Err(bad(format!("element {a} has no inverse")));
            }
        }
        if gens.is_empty() {
            return Err(bad("no generators".into()));
        }
        let mut gl: Vec<u32> = Vec::new();
        for &g in &gens {
            if g as usize >= n {
                return Err(bad(format!("generator {g} out of range")));
            }
            if g == identity {
                return Err(bad("identity listed as generator".into()));
            }
            if !gl.contains(&g) {
                gl.push(g);
            }
        }
        let given = gl.len();
        let mut nm: Vec<String> = match names {
            Some(v) => {
                if v.len() != gens.len() {
                    return Err(bad("names and gens differ in length".into()));
                }
                v
            }
            None => (0..given).map(|j| ((b'a' + (j % 26) as u8) as char).to_string()).collect(),
        };
        nm.truncate(given);
        for j in 0..given {
            let ig = inverse[gl[j] as usize];
            if !gl.contains(&ig) {
                gl.push(ig);
                let base = &nm[j];
                let n2 = if base.len() == 1 && base.chars().all(|c| c.is_ascii_lowercase()) {
                    base.to_ascii_uppercase()
                } else {
                    format!("{base}^-1")
                };
                nm.push(n2);
            }
        }
        let inv: Vec<u16> = gl
            .iter()
            .map(|&g| gl.iter().position(|&h| h == inverse[g as usize]).unwrap() as u16)
            .collect();
        // BFS in generator order gives the shortlex-least geodesic spelling.
        let mut dist = vec![u32::MAX; n];
        let mut spelling = vec![Vec::new(); n];
        let mut q = VecDeque::new();
        dist[identity as usize] = 0;
        q.push_back(identity);
        while let Some(x) = q.pop_front() {
            for (s, &g) in gl.iter().enumerate() {
                let y = table[x as usize][g as usize];
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = dist[x as usize] + 1;
                    let mut sp = spelling[x as usize].clone();
                    sp.push(s as u16);
                    spelling[y as usize] = sp;
                    q.push_back(y);
                }
            }
        }
        if dist.iter().any(|&d| d == u32::MAX) {
            return Err(bad("generators do not generate the table".into()));
        }
        let gen_elems = gl.iter().map(|&g| Elem::Fin(g)).collect();
        Ok(FactorOracle {
            id,
            spec,
            repr: Repr::Finite(FiniteData { table, identity, inverse, dist, spelling }),
            names: nm,
            gen_elems,
            inv,
        })
    }

    pub fn spec(&self) -> &FactorSpec {
        &self.spec
    }

    pub fn kind(&self) -> FactorKind {
        match self.repr {
            Repr::Finite(_) => FactorKind::FiniteTable,
            Repr::Z => FactorKind::InfiniteCyclic,
            Repr::Free(_) => FactorKind::Free,
        }
    }

    pub fn num_gens(&self) -> usize {
        self.gen_elems.len()
    }

    pub fn gen_name(&self, s: u16) -> &str {
        &self.names[s as usize]
    }

    pub fn sym_by_name(&self, name: &str) -> Option<u16> {
        self.names.iter().position(|n| n == name).map(|p| p as u16)
    }

    pub fn gen_elem(&self, s: u16) -> &Elem {
        &self.gen_elems[s as usize]
    }

    pub fn inv_sym(&self, s: u16) -> u16 {
        self.inv[s as usize]
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<usize> {
        match &self.repr {
            Repr::Finite(f) => Some(f.table.len()),
            _ => None,
        }
    }

    pub fn identity(&self) -> Elem {
        match &self.repr {
            Repr::Finite(f) => Elem::Fin(f.identity),
            Repr::Z => Elem::Int(0),
            Repr::Free(_) => Elem::Free(Vec::new()),
        }
    }

    pub fn is_identity(&self, e: &Elem) -> bool {
        match (&self.repr, e) {
            (Repr::Finite(f), Elem::Fin(x)) => *x == f.identity,
            (_, Elem::Int(n)) => *n == 0,
            (_, Elem::Free(v)) => v.is_empty(),
            _ => false,
        }
    }

    pub fn multiply(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.repr, a, b) {
            (Repr::Finite(f), Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(f.table[*x as usize][*y as usize]),
            (Repr::Z, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (Repr::Free(_), Elem::Free(x), Elem::Free(y)) => Elem::Free(free_mul(x, y)),
            _ => panic!("factor {}: element of the wrong kind", self.id),
        }
    }

    pub fn invert(&self, a: &Elem) -> Elem {
        match (&self.repr, a) {
            (Repr::Finite(f), Elem::Fin(x)) => Elem::Fin(f.inverse[*x as usize]),
            (Repr::Z, Elem::Int(x)) => Elem::Int(-x),
            (Repr::Free(_), Elem::Free(v)) => Elem::Free(v.iter().rev().map(|x| -x).collect()),
            _ => panic!("factor {}: element of the wrong kind", self.id),
        }
    }

    /// Word length of `e` with respect to the generators.
    pub fn length(&self, e: &Elem) -> usize {
        match (&self.repr, e) {
            (Repr::Finite(f), Elem::Fin(x)) => f.dist[*x as usize] as usize,
            (_, Elem::Int(n)) => n.unsigned_abs() as usize,
            (_, Elem::Free(v)) => v.len(),
            _ => panic!("factor {}: element of the wrong kind", self.id),
        }
    }

    pub fn spell(&self, e: &Elem) -> Vec<u16> {
        match (&self.repr, e) {
            (Repr::Finite(f), Elem::Fin(x)) => f.spelling[*x as usize].clone(),
            (_, Elem::Int(n)) => vec![if *n > 0 { 0 } else { 1 }; n.unsigned_abs() as usize],
            (_, Elem::Free(v)) => v
                .iter()
                .map(|&x| {
                    let j = (x.unsigned_abs() - 1) as u16;
                    if x > 0 {
                        2 * j
                    } else {
                        2 * j + 1
                    }
                })
                .collect(),
            _ => panic!("factor {}: element of the wrong kind", self.id),
        }
    }

    pub fn eval(&self, syms: &[u16]) -> Elem {
        let mut e = self.identity();
        for &s in syms {
            e = self.multiply(&e, self.gen_elem(s));
        }
        e
    }

    /// All elements of length exactly `l`, ordered by canonical spelling.
    pub fn sphere(&self, l: usize) -> Vec<Elem> {
        match &self.repr {
            Repr::Finite(f) => {
                let mut v: Vec<u32> = (0..f.table.len() as u32).filter(|&x| f.dist[x as usize] as usize == l).collect();
                v.sort_by(|a, b| f.spelling[*a as usize].cmp(&f.spelling[*b as usize]));
                v.into_iter().map(Elem::Fin).collect()
            }
            Repr::Z => {
                if l == 0 {
                    vec![Elem::Int(0)]
                } else {
                    vec![Elem::Int(l as i64), Elem::Int(-(l as i64))]
                }
            }
            Repr::Free(k) => {
                let mut out = vec![Vec::new()];
                for _ in 0..l {
                    let mut next = Vec::new();
                    for w in &out {
                        for s in 0..2 * *k {
                            let j = (s / 2) as i32 + 1;
                            let x = if s % 2 == 0 { j } else { -j };
                            if let Some(&last) = (w as &Vec<i32>).last() {
                                if last == -x {
                                    continue;
                                }
                            }
                            let mut w2 = w.clone();
                            w2.push(x);
                            next.push(w2);
                        }
                    }
                    out = next;
                }
                out.into_iter().map(Elem::Free).collect()
            }
        }
    }

    /// Elements `p` with `|p| + |p⁻¹e| = |e|`, ordered by length.
    /// Includes the identity and `e` itself.
    pub fn geodesic_prefixes(&self, e: &Elem) -> Vec<Elem> {
        match (&self.repr, e) {
            (Repr::Finite(f), Elem::Fin(x)) => {
                let d = f.dist[*x as usize];
                let mut v: Vec<u32> = (0..f.table.len() as u32)
                    .filter(|&p| {
                        let q = f.table[f.inverse[p as usize] as usize][*x as usize];
                        f.dist[p as usize] + f.dist[q as usize] == d
                    })
                    .collect();
                v.sort_by_key(|&p| (f.dist[p as usize], f.spelling[p as usize].clone()));
                v.into_iter().map(Elem::Fin).collect()
            }
            (_, Elem::Int(n)) => {
                let s = n.signum();
                (0..=n.abs()).map(|k| Elem::Int(s * k)).collect()
            }
            (_, Elem::Free(v)) => (0..=v.len()).map(|k| Elem::Free(v[..k].to_vec())).collect(),
            _ => panic!("factor {}: element of the wrong kind", self.id),
        }
    }

    /// Longest common geodesic prefix of `a` and `b`; among equal lengths the
    /// least canonical spelling wins.
    pub fn common_geodesic_prefix(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => {
                if x.signum() == y.signum() {
                    Elem::Int(x.signum() * x.abs().min(y.abs()))
                } else {
                    Elem::Int(0)
                }
            }
            (Elem::Free(x), Elem::Free(y)) => {
                let k = x.iter().zip(y).take_while(|(p, q)| p == q).count();
                Elem::Free(x[..k].to_vec())
            }
            _ => {
                let cands = self.geodesic_prefixes(b);
                let best = cands.iter().filter(|p| self.is_geodesic_prefix(p, a)).map(|p| self.length(p)).max();
                match best {
                    Some(l) => cands.into_iter().find(|p| self.length(p) == l && self.is_geodesic_prefix(p, a)).unwrap(),
                    None => self.identity(),
                }
            }
        }
    }

    /// Longest common geodesic suffix of `a` and `b`.
    pub fn common_geodesic_suffix(&self, a: &Elem, b: &Elem) -> Elem {
        self.invert(&self.common_geodesic_prefix(&self.invert(a), &self.invert(b)))
    }

    /// Is `p` a geodesic prefix of `e`?
    pub fn is_geodesic_prefix(&self, p: &Elem, e: &Elem) -> bool {
        let q = self.multiply(&self.invert(p), e);
        self.length(p) + self.length(&q) == self.length(e)
    }
}
