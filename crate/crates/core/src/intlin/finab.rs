//! Finitely presented abelian groups in invariant-factor form, together with
//! the structure maps between them.

use super::{snf, Echelon, IntMatrix, SmithForm};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;

/// Finite(ly generated) abelian group `Z/d1 x ... x Z/dk x Z^free` in
/// canonical form: every `di >= 2` and `di | d(i+1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinAbGroup {
    torsion: Vec<BigInt>,
    free_rank: usize,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup {
            torsion: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn cyclic(m: u64) -> Self {
        if m <= 1 {
            return Self::trivial();
        }
        FinAbGroup {
            torsion: vec![BigInt::from(m)],
            free_rank: 0,
        }
    }

    /// `(Z/p)^k`
    pub fn elementary(p: u64, k: usize) -> Self {
        FinAbGroup {
            torsion: vec![BigInt::from(p); k],
            free_rank: 0,
        }
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup {
            torsion: Vec::new(),
            free_rank: rank,
        }
    }

    pub fn from_invariants(torsion: Vec<BigInt>, free_rank: usize) -> Result<Self> {
        let torsion: Vec<BigInt> = torsion.into_iter().filter(|d| !d.is_one()).collect();
        for d in &torsion {
            if *d < BigInt::from(2) {
                return Err(Error::InvalidSpec(format!("invariant factor {d} < 2")));
            }
        }
        for pair in torsion.windows(2) {
            if !(&pair[1] % &pair[0]).is_zero() {
                return Err(Error::InvalidSpec(
                    "invariant factors must form a divisibility chain".into(),
                ));
            }
        }
        Ok(FinAbGroup { torsion, free_rank })
    }

    /// Canonicalizes an arbitrary list of cyclic moduli (0 meaning a free
    /// factor) into invariant-factor form.
    pub fn from_moduli(moduli: &[BigInt], extra_free: usize) -> Result<Self> {
        let n = moduli.len();
        let mut diag = IntMatrix::zero(n, n);
        for (i, m) in moduli.iter().enumerate() {
            diag.set(i, i, m.abs());
        }
        let cok = cokernel_structure(&diag)?;
        let mut g = cok.group;
        g.free_rank += extra_free;
        Ok(g)
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Group order; `None` when the free rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn num_generators(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Cyclic modulus per generator: the invariant factor for torsion
    /// generators, 0 for free ones.
    pub fn relation_moduli(&self) -> Vec<BigInt> {
        let mut m = self.torsion.clone();
        m.extend(std::iter::repeat(BigInt::zero()).take(self.free_rank));
        m
    }

    /// Diagonal relation matrix: one column `di * ei` per torsion generator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.num_generators();
        let t = self.torsion.len();
        let mut m = IntMatrix::zero(n, t);
        for (i, d) in self.torsion.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Reduces generator coordinates into the canonical range `[0, di)`.
    pub fn reduce_coords(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.num_generators());
        v.iter()
            .enumerate()
            .map(|(i, x)| match self.torsion.get(i) {
                Some(d) => x.mod_floor(d),
                None => x.clone(),
            })
            .collect()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" x "))
    }
}

impl Serialize for FinAbGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FinAbGroup", 2)?;
        let torsion: Vec<String> = self.torsion.iter().map(|d| d.to_string()).collect();
        s.serialize_field("torsion", &torsion)?;
        s.serialize_field("free_rank", &self.free_rank)?;
        s.end()
    }
}

/// `Z^rows / column-span(a)` with the transform needed to map ambient vectors
/// to invariant-factor coordinates.
pub struct CokernelStructure {
    pub group: FinAbGroup,
    smith: SmithForm,
    /// modulus per ambient coordinate after the transform (1 = collapsed)
    full_diag: Vec<BigInt>,
    /// ambient coordinates kept as generators (modulus != 1)
    kept: Vec<usize>,
}

impl CokernelStructure {
    /// Class of an ambient vector in generator coordinates, each torsion
    /// coordinate reduced into `[0, di)`.
    pub fn project(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let w = self.smith.u.mul_vec(v)?;
        Ok(self
            .kept
            .iter()
            .map(|&i| {
                let d = &self.full_diag[i];
                if d.is_zero() {
                    w[i].clone()
                } else {
                    w[i].mod_floor(d)
                }
            })
            .collect())
    }

    /// Ambient representative of the i-th generator.
    pub fn generator_in_ambient(&self, i: usize) -> Vec<BigInt> {
        self.smith.u_inv.col(self.kept[i])
    }

    pub fn num_generators(&self) -> usize {
        self.kept.len()
    }
}

/// Structure of `Z^rows(a) / column-span(a)`.
pub fn cokernel_structure(a: &IntMatrix) -> Result<CokernelStructure> {
    let smith = snf(a)?;
    let mut full_diag = vec![BigInt::zero(); a.rows()];
    for (i, d) in smith.d.iter().enumerate() {
        full_diag[i] = d.clone();
    }
    let torsion: Vec<BigInt> = full_diag
        .iter()
        .filter(|d| **d >= BigInt::from(2))
        .cloned()
        .collect();
    let free_rank = full_diag.iter().filter(|d| d.is_zero()).count();
    let kept: Vec<usize> = (0..a.rows()).filter(|&i| !full_diag[i].is_one()).collect();
    let group = FinAbGroup::from_invariants(torsion, free_rank)?;
    Ok(CokernelStructure {
        group,
        smith,
        full_diag,
        kept,
    })
}

/// Homomorphism between groups in invariant-factor coordinates; column j of
/// `matrix` is the image of the j-th source generator.
#[derive(Clone, Debug)]
pub struct FinAbMap {
    pub source: FinAbGroup,
    pub target: FinAbGroup,
    pub matrix: IntMatrix,
}

impl FinAbMap {
    /// Checks that source relations land in target relations, i.e. the matrix
    /// defines an actual homomorphism.
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.num_generators() || matrix.cols() != source.num_generators() {
            return Err(Error::DimensionMismatch("map matrix shape".into()));
        }
        let tmod = target.relation_moduli();
        for (j, d) in source.relation_moduli().iter().enumerate() {
            if d.is_zero() {
                continue; // free generator: no relation to preserve
            }
            for (i, t) in tmod.iter().enumerate() {
                let x = d * matrix.at(i, j);
                let ok = if t.is_zero() { x.is_zero() } else { (&x % t).is_zero() };
                if !ok {
                    return Err(Error::IllDefinedHomomorphism);
                }
            }
        }
        Ok(FinAbMap {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        FinAbMap {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.num_generators()),
        }
    }

    pub fn zero(source: &FinAbGroup, target: &FinAbGroup) -> Self {
        FinAbMap {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zero(target.num_generators(), source.num_generators()),
        }
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        Ok(self.target.reduce_coords(&self.matrix.mul_vec(v)?))
    }

    /// `other` after `self` (source of `other` = target of `self`).
    pub fn then(&self, other: &FinAbMap) -> Result<FinAbMap> {
        if self.target != other.source {
            return Err(Error::DimensionMismatch("composition".into()));
        }
        FinAbMap::new(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix)?,
        )
    }

    /// Equality as homomorphisms: matrices may differ by target relations.
    pub fn equivalent(&self, other: &FinAbMap) -> bool {
        if self.source != other.source || self.target != other.target {
            return false;
        }
        let tmod = self.target.relation_moduli();
        (0..self.matrix.cols()).all(|j| {
            (0..self.matrix.rows()).all(|i| {
                let diff = self.matrix.at(i, j) - other.matrix.at(i, j);
                if tmod[i].is_zero() {
                    diff.is_zero()
                } else {
                    (&diff % &tmod[i]).is_zero()
                }
            })
        })
    }

    /// Stacks maps with a common source into one map to the canonicalized
    /// direct sum of the targets.
    pub fn stack(maps: &[FinAbMap]) -> Result<FinAbMap> {
        let source = match maps.first() {
            Some(m) => m.source.clone(),
            None => return Err(Error::DimensionMismatch("empty stack".into())),
        };
        if maps.iter().any(|m| m.source != source) {
            return Err(Error::DimensionMismatch("stack sources differ".into()));
        }
        let mut moduli = Vec::new();
        let mut big = IntMatrix::zero(0, source.num_generators());
        for m in maps {
            moduli.extend(m.target.relation_moduli());
            big = big.vcat(&m.matrix)?;
        }
        // canonicalize the direct sum Z^T / diag(moduli)
        let t = moduli.len();
        let mut diag = IntMatrix::zero(t, t);
        for (i, m) in moduli.iter().enumerate() {
            diag.set(i, i, m.clone());
        }
        let cok = cokernel_structure(&diag)?;
        let transformed = cok.smith.u.mul(&big)?;
        let matrix = IntMatrix::from_fn(cok.kept.len(), source.num_generators(), |r, c| {
            let i = cok.kept[r];
            let v = transformed.at(i, c);
            if cok.full_diag[i].is_zero() {
                v.clone()
            } else {
                v.mod_floor(&cok.full_diag[i])
            }
        });
        FinAbMap::new(source, cok.group, matrix)
    }
}

/// Kernel subgroup of a homomorphism: its structure plus inclusion
/// generators expressed in source coordinates (one column per generator).
pub fn fin_ab_kernel(f: &FinAbMap) -> Result<(FinAbGroup, IntMatrix)> {
    let s = f.source.num_generators();
    let rs = f.source.relation_matrix();
    let rt = f.target.relation_matrix();
    // x is in the kernel iff f(x) is a target relation combination
    let stacked = f.matrix.hcat(&rt)?;
    let big_kernel = Echelon::compute(&stacked.to_sparse(), false)?.kernel();
    let projected = IntMatrix::from_fn(s, big_kernel.cols(), |r, c| big_kernel.at(r, c).clone());
    let basis = Echelon::compute(&projected.to_sparse(), false)?.image();
    let solver = Echelon::compute(&basis.to_sparse(), false)?;
    // source relations always lie in the kernel lattice
    let mut rel_cols = Vec::with_capacity(rs.cols());
    for j in 0..rs.cols() {
        let col = solver
            .solve(&rs.col(j))
            .ok_or(Error::IllDefinedHomomorphism)?;
        rel_cols.push(col);
    }
    let c = IntMatrix::from_cols(basis.cols(), rel_cols)?;
    let cok = cokernel_structure(&c)?;
    let gens = IntMatrix::from_fn(s, cok.num_generators(), |r, i| {
        let amb = cok.generator_in_ambient(i);
        // back to source coordinates through the kernel basis
        let mut acc = BigInt::zero();
        for (k, coord) in amb.iter().enumerate() {
            acc += coord * basis.at(r, k);
        }
        acc
    });
    // reduce columns into the canonical source range
    let reduced = IntMatrix::from_fn(s, gens.cols(), |r, c| {
        f.source.reduce_coords(&gens.col(c))[r].clone()
    });
    Ok((cok.group, reduced))
}

/// Structure of the subgroup of `ambient` generated by the given element
/// coordinates (one element per column).
pub fn subgroup_structure(ambient: &FinAbGroup, elements: &IntMatrix) -> Result<FinAbGroup> {
    if elements.rows() != ambient.num_generators() {
        return Err(Error::DimensionMismatch("subgroup generators".into()));
    }
    let rel = ambient.relation_matrix();
    let all = elements.hcat(&rel)?;
    let basis = Echelon::compute(&all.to_sparse(), false)?.image();
    let solver = Echelon::compute(&basis.to_sparse(), false)?;
    let mut rel_cols = Vec::with_capacity(rel.cols());
    for j in 0..rel.cols() {
        rel_cols.push(solver.solve(&rel.col(j)).ok_or(Error::NoSolution)?);
    }
    let c = IntMatrix::from_cols(basis.cols(), rel_cols)?;
    Ok(cokernel_structure(&c)?.group)
}
