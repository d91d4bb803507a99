//! Integer lattices with a unimodular action of a finite group, and the
//! equivariant maps between them. Actions are stored per element; at the
//! supported group orders that is cheaper than any word evaluation.

use crate::error::{Error, Result};
use crate::groups::{self, FiniteGroup, Subgroup};
use crate::intlin::{Echelon, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone)]
pub struct GLattice {
    group: FiniteGroup,
    rank: usize,
    action: Vec<IntMatrix>,
}

impl GLattice {
    /// Validates the action: identity at the identity, and the homomorphism
    /// property (exhaustive up to order 16, sampled above).
    pub fn new(group: FiniteGroup, rank: usize, action: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::DimensionMismatch(
                "one action matrix per group element".into(),
            ));
        }
        for m in &action {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::DimensionMismatch("action matrix shape".into()));
            }
        }
        if action[0] != IntMatrix::identity(rank) {
            return Err(Error::InvalidGroup("identity must act trivially".into()));
        }
        let lat = GLattice {
            group,
            rank,
            action,
        };
        let n = lat.group.order();
        let check = |a: usize, b: usize| -> Result<()> {
            let lhs = lat.action[a].mul(&lat.action[b])?;
            if lhs != lat.action[lat.group.mul(a, b)] {
                return Err(Error::InvalidGroup(format!(
                    "action is not a homomorphism at ({a},{b})"
                )));
            }
            Ok(())
        };
        if n <= 16 {
            for a in 0..n {
                for b in 0..n {
                    check(a, b)?;
                }
            }
        } else {
            let mut state = 0x9E37_79B9_7F4A_7C15u64;
            for _ in 0..100 {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                let a = (state >> 8) as usize % n;
                let b = (state >> 32) as usize % n;
                check(a, b)?;
            }
        }
        Ok(lat)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    /// Rank-1 lattice with every element acting as the identity.
    pub fn trivial(group: &FiniteGroup) -> Self {
        let action = vec![IntMatrix::identity(1); group.order()];
        GLattice {
            group: group.clone(),
            rank: 1,
            action,
        }
    }

    /// Z[G/H]: the group permutes the coset basis vectors.
    pub fn perm_lattice(group: &FiniteGroup, h: &Subgroup) -> Self {
        let cs = groups::cosets(group, h);
        let rank = cs.reps.len();
        let action = group
            .elements()
            .map(|g| {
                IntMatrix::from_fn(rank, rank, |r, c| {
                    if cs.action[g][c] == r {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
            })
            .collect();
        GLattice {
            group: group.clone(),
            rank,
            action,
        }
    }

    pub fn direct_sum(lattices: &[GLattice]) -> Result<Self> {
        let group = match lattices.first() {
            Some(l) => l.group.clone(),
            None => return Err(Error::DimensionMismatch("empty direct sum".into())),
        };
        if lattices.iter().any(|l| l.group != group) {
            return Err(Error::DimensionMismatch("direct sum over one group".into()));
        }
        let rank = lattices.iter().map(|l| l.rank).sum();
        let action = group
            .elements()
            .map(|g| {
                let mut m = IntMatrix::zero(rank, rank);
                let mut off = 0;
                for l in lattices {
                    for r in 0..l.rank {
                        for c in 0..l.rank {
                            let v = l.action[g].at(r, c);
                            if !v.is_zero() {
                                m.set(off + r, off + c, v.clone());
                            }
                        }
                    }
                    off += l.rank;
                }
                m
            })
            .collect();
        Ok(GLattice {
            group,
            rank,
            action,
        })
    }

    /// Same lattice viewed over a subgroup (in its own element indexing).
    pub fn restrict(&self, h: &Subgroup) -> GLattice {
        assert_eq!(self.group, *h.parent(), "subgroup of the acting group");
        let (hg, embed) = h.as_group();
        let action = embed.iter().map(|&g| self.action[g].clone()).collect();
        GLattice {
            group: hg,
            rank: self.rank,
            action,
        }
    }
}

impl std::fmt::Debug for GLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GLattice(rank {} over {})",
            self.rank,
            self.group.label()
        )
    }
}

/// A G-map of lattices: `matrix * source.action(g) = target.action(g) * matrix`.
#[derive(Clone, Debug)]
pub struct EquivariantMap {
    pub source: GLattice,
    pub target: GLattice,
    pub matrix: IntMatrix,
}

impl EquivariantMap {
    pub fn new(source: GLattice, target: GLattice, matrix: IntMatrix) -> Result<Self> {
        if source.group != target.group {
            return Err(Error::DimensionMismatch("maps within one group".into()));
        }
        if matrix.rows() != target.rank || matrix.cols() != source.rank {
            return Err(Error::DimensionMismatch("equivariant map shape".into()));
        }
        for g in source.group.elements() {
            if matrix.mul(&source.action[g])? != target.action[g].mul(&matrix)? {
                return Err(Error::InvalidGroup(format!(
                    "map does not commute with the action of {g}"
                )));
            }
        }
        Ok(EquivariantMap {
            source,
            target,
            matrix,
        })
    }
}

/// The fixed inclusion of the trivial lattice into Z[G/H]: 1 maps to the sum
/// of all coset basis vectors.
pub fn norm_inclusion(group: &FiniteGroup, h: &Subgroup) -> Result<EquivariantMap> {
    let target = GLattice::perm_lattice(group, h);
    let matrix = IntMatrix::from_fn(target.rank, 1, |_, _| BigInt::one());
    EquivariantMap::new(GLattice::trivial(group), target, matrix)
}

/// Character lattice of the multinorm-one torus attached to subgroups
/// `H_1..H_n`: the quotient of the sum of the coset lattices by the diagonal
/// norm line. Returns the lattice and the projection from the ambient sum.
///
/// The quotient basis completes the primitive all-ones vector to a basis of
/// the ambient lattice and drops its coordinate, so the action matrices are
/// reproducible across runs.
pub fn multinorm_lattice(
    group: &FiniteGroup,
    subgroups: &[Subgroup],
) -> Result<(GLattice, EquivariantMap)> {
    if subgroups.is_empty() {
        return Err(Error::InvalidSpec("at least one subgroup".into()));
    }
    let summands: Vec<GLattice> = subgroups
        .iter()
        .map(|h| GLattice::perm_lattice(group, h))
        .collect();
    let ambient = GLattice::direct_sum(&summands)?;
    let big_rank = ambient.rank;

    // unimodular u with u * (all-ones) = e_0, from the echelon of the norm row
    let norm_row = IntMatrix::from_fn(1, big_rank, |_, _| BigInt::one());
    let ech = Echelon::compute(&norm_row.to_sparse(), true)?;
    let u = ech.v_dense().transpose();
    let u_inv = ech
        .v_inv_dense()
        .expect("inverse tracking was requested")
        .transpose();
    debug_assert_eq!(
        u.mul_vec(&vec![BigInt::one(); big_rank]).unwrap(),
        std::iter::once(BigInt::one())
            .chain(std::iter::repeat(BigInt::zero()).take(big_rank - 1))
            .collect::<Vec<_>>()
    );

    let rank = big_rank - 1;
    let mut action = Vec::with_capacity(group.order());
    for g in group.elements() {
        let conj = u.mul(&ambient.action[g])?.mul(&u_inv)?;
        // the conjugated action fixes e_0, so the first column is e_0 and the
        // lower-right block is the induced action on the quotient
        debug_assert!((1..big_rank).all(|r| conj.at(r, 0).is_zero()));
        action.push(IntMatrix::from_fn(rank, rank, |r, c| {
            conj.at(r + 1, c + 1).clone()
        }));
    }
    let lattice = GLattice::new(group.clone(), rank, action)?;
    let proj_matrix = IntMatrix::from_fn(rank, big_rank, |r, c| u.at(r + 1, c).clone());
    let projection = EquivariantMap::new(ambient, lattice.clone(), proj_matrix)?;
    Ok((lattice, projection))
}

#[derive(Serialize, Deserialize)]
struct LatticeFile {
    rank: usize,
    action: Vec<IntMatrix>,
}

/// Lattice spec grammar: `trivial`, `perm:<subgroup>`,
/// `multinorm:<subgroup>;<subgroup>;...`, or `@file.json` with explicit
/// action matrices (one per group element, identity first).
pub fn parse_lattice_spec(group: &FiniteGroup, spec: &str) -> Result<GLattice> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path)?;
        let file: LatticeFile = serde_json::from_str(&text)?;
        return GLattice::new(group.clone(), file.rank, file.action);
    }
    if spec == "trivial" {
        return Ok(GLattice::trivial(group));
    }
    if let Some(sub) = spec.strip_prefix("perm:") {
        let h = groups::parse_subgroup_spec(group, sub)?;
        return Ok(GLattice::perm_lattice(group, &h));
    }
    if let Some(subs) = spec.strip_prefix("multinorm:") {
        let subgroups = subs
            .split(';')
            .map(|s| groups::parse_subgroup_spec(group, s))
            .collect::<Result<Vec<_>>>()?;
        return Ok(multinorm_lattice(group, &subgroups)?.0);
    }
    Err(Error::Parse(format!("bad lattice spec `{spec}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::{kernel_basis, snf};

    #[test]
    fn trivial_lattice() {
        let c2 = FiniteGroup::cyclic(2);
        let t = GLattice::trivial(&c2);
        assert_eq!(t.rank(), 1);
        for g in c2.elements() {
            assert_eq!(*t.action(g), IntMatrix::identity(1));
        }
        let h = Subgroup::from_generators(&c2, &[1]).unwrap();
        let r = t.restrict(&h);
        assert_eq!(r.rank(), 1);
        assert_eq!(*r.action(1), IntMatrix::identity(1));
    }

    #[test]
    fn perm_lattice_shapes() {
        let klein = FiniteGroup::elementary_abelian(2, 2).unwrap();
        let whole = GLattice::perm_lattice(&klein, &Subgroup::whole(&klein));
        assert_eq!(whole.rank(), 1);
        for g in klein.elements() {
            assert_eq!(*whole.action(g), IntMatrix::identity(1));
        }
        let regular = GLattice::perm_lattice(&klein, &Subgroup::trivial(&klein));
        assert_eq!(regular.rank(), 4);

        // <(1,0)> = {0,2}: the action of (0,1) swaps the two cosets
        let h = Subgroup::from_generators(&klein, &[2]).unwrap();
        let lat = GLattice::perm_lattice(&klein, &h);
        assert_eq!(lat.rank(), 2);
        assert_eq!(
            *lat.action(1),
            IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]])
        );
    }

    #[test]
    fn norm_inclusion_is_the_all_ones_column() {
        let c2 = FiniteGroup::cyclic(2);
        let incl = norm_inclusion(&c2, &Subgroup::trivial(&c2)).unwrap();
        assert_eq!(incl.matrix, IntMatrix::from_i64_rows(&[vec![1], vec![1]]));
        // the image is fixed by every element
        for g in c2.elements() {
            assert_eq!(
                incl.target.action(g).mul(&incl.matrix).unwrap(),
                incl.matrix
            );
        }
    }

    #[test]
    fn direct_sum_rank_adds() {
        let c2 = FiniteGroup::cyclic(2);
        let a = GLattice::perm_lattice(&c2, &Subgroup::trivial(&c2));
        let b = GLattice::trivial(&c2);
        let s = GLattice::direct_sum(&[a, b.clone(), b]).unwrap();
        assert_eq!(s.rank(), 4);
    }

    #[test]
    fn multinorm_sign_lattice() {
        // Z[C2]/Z(1+g) has rank 1 and the generator acts by -1
        let c2 = FiniteGroup::cyclic(2);
        let (m, proj) = multinorm_lattice(&c2, &[Subgroup::trivial(&c2)]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(*m.action(1), IntMatrix::from_i64_rows(&[vec![-1]]));
        // the kernel of the projection is the norm line
        let kern = kernel_basis(&proj.matrix).unwrap();
        assert_eq!(kern.len(), 1);
        assert!(kern[0]
            .iter()
            .all(|x| x.magnitude() == BigInt::one().magnitude()));
    }

    #[test]
    fn multinorm_klein_rank() {
        let klein = FiniteGroup::elementary_abelian(2, 2).unwrap();
        let subs: Vec<Subgroup> = [1usize, 2, 3]
            .iter()
            .map(|&g| Subgroup::from_generators(&klein, &[g]).unwrap())
            .collect();
        let (m, proj) = multinorm_lattice(&klein, &subs).unwrap();
        assert_eq!(m.rank(), 5);
        // the all-ones vector is primitive: the inclusion has lone invariant 1
        let ones = IntMatrix::from_fn(6, 1, |_, _| BigInt::one());
        let s = snf(&ones).unwrap();
        assert_eq!(s.d, vec![BigInt::one()]);
        // projection is equivariant by construction; spot-check surjectivity
        let ech = Echelon::compute(&proj.matrix.to_sparse(), false).unwrap();
        assert_eq!(ech.rank(), 5);
    }

    #[test]
    fn multinorm_whole_group_collapses() {
        let c3 = FiniteGroup::cyclic(3);
        let (m, _) = multinorm_lattice(&c3, &[Subgroup::whole(&c3)]).unwrap();
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn restriction_keeps_rank_and_restricts_action() {
        let klein = FiniteGroup::elementary_abelian(2, 2).unwrap();
        let h = Subgroup::from_generators(&klein, &[2]).unwrap();
        let lat = GLattice::perm_lattice(&klein, &h);
        let res = lat.restrict(&h);
        assert_eq!(res.rank(), lat.rank());
        // restricting to {e} gives identity actions
        let triv = lat.restrict(&Subgroup::trivial(&klein));
        assert_eq!(triv.group().order(), 1);
        assert_eq!(*triv.action(0), IntMatrix::identity(2));
    }

    #[test]
    fn lattice_spec_grammar() {
        let klein = FiniteGroup::elementary_abelian(2, 2).unwrap();
        assert_eq!(parse_lattice_spec(&klein, "trivial").unwrap().rank(), 1);
        assert_eq!(parse_lattice_spec(&klein, "perm:gens:1").unwrap().rank(), 2);
        assert_eq!(
            parse_lattice_spec(&klein, "multinorm:gens:1;gens:2;gens:3")
                .unwrap()
                .rank(),
            5
        );
        assert!(parse_lattice_spec(&klein, "nope").is_err());
    }

    #[test]
    fn invalid_actions_rejected() {
        let c2 = FiniteGroup::cyclic(2);
        // wrong identity
        let bad = GLattice::new(
            c2.clone(),
            1,
            vec![
                IntMatrix::from_i64_rows(&[vec![-1]]),
                IntMatrix::identity(1),
            ],
        );
        assert!(bad.is_err());
        // not a homomorphism: g acts by 2 (not even unimodular)
        let bad = GLattice::new(
            c2,
            1,
            vec![IntMatrix::identity(1), IntMatrix::from_i64_rows(&[vec![2]])],
        );
        assert!(bad.is_err());
    }
}
