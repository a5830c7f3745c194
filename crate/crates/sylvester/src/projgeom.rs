//! Points, lines, incidence, and projective transformations of the
//! projective plane over a cyclotomic field.
//!
//! Points and lines are stored in the same homogeneous-triple form, so join
//! and meet share one cross-product routine. Both are canonicalized at
//! construction by dividing by the last nonzero coordinate, which makes
//! equality-up-to-scalar a coefficient comparison.

use std::fmt;

use crate::cyclofield::CycloElement;
use crate::error::{Error, Result};

fn canonicalize(coords: [CycloElement; 3]) -> Result<[CycloElement; 3]> {
    let pivot = coords
        .iter()
        .rposition(|c| !c.is_zero())
        .ok_or(Error::ZeroPoint)?;
    let inv = coords[pivot].inv()?;
    let [x, y, z] = coords;
    Ok([&x * &inv, &y * &inv, &z * &inv])
}

fn cross(a: &[CycloElement; 3], b: &[CycloElement; 3]) -> [CycloElement; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

fn dot(a: &[CycloElement; 3], b: &[CycloElement; 3]) -> CycloElement {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

/// A point of the projective plane, canonicalized so the last nonzero
/// coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPoint {
    coords: [CycloElement; 3],
}

impl ProjPoint {
    pub fn new(x: CycloElement, y: CycloElement, z: CycloElement) -> Result<Self> {
        Ok(ProjPoint { coords: canonicalize([x, y, z])? })
    }

    /// The affine point (x, y) = [x : y : 1].
    pub fn affine(x: CycloElement, y: CycloElement) -> Self {
        let order = num_integer::lcm(x.order(), y.order());
        ProjPoint::new(x, y, CycloElement::one(order)).expect("z = 1 is nonzero")
    }

    pub fn from_integers(order: u64, x: i64, y: i64, z: i64) -> Result<Self> {
        ProjPoint::new(
            CycloElement::from_integer(order, x),
            CycloElement::from_integer(order, y),
            CycloElement::from_integer(order, z),
        )
    }

    pub fn coords(&self) -> &[CycloElement; 3] {
        &self.coords
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; {} ; {}", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// A line a*x + b*y + c*z = 0, canonicalized like a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjLine {
    coeffs: [CycloElement; 3],
}

impl ProjLine {
    pub fn new(a: CycloElement, b: CycloElement, c: CycloElement) -> Result<Self> {
        let coeffs = canonicalize([a, b, c]).map_err(|_| Error::ZeroLine)?;
        Ok(ProjLine { coeffs })
    }

    pub fn from_integers(order: u64, a: i64, b: i64, c: i64) -> Result<Self> {
        ProjLine::new(
            CycloElement::from_integer(order, a),
            CycloElement::from_integer(order, b),
            CycloElement::from_integer(order, c),
        )
    }

    /// The line at infinity z = 0.
    pub fn at_infinity(order: u64) -> Self {
        ProjLine::from_integers(order, 0, 0, 1).expect("nonzero")
    }

    pub fn coeffs(&self) -> &[CycloElement; 3] {
        &self.coeffs
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; {} ; {}", self.coeffs[0], self.coeffs[1], self.coeffs[2])
    }
}

/// Exact incidence test a*x + b*y + c*z = 0.
pub fn incident(p: &ProjPoint, l: &ProjLine) -> bool {
    dot(&p.coords, &l.coeffs).is_zero()
}

/// The line through two distinct points.
pub fn join(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    if p == q {
        return Err(Error::IdenticalPoints);
    }
    let c = cross(&p.coords, &q.coords);
    ProjLine::new(c[0].clone(), c[1].clone(), c[2].clone())
}

/// The intersection point of two distinct lines.
pub fn meet(l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint> {
    if l1 == l2 {
        return Err(Error::IdenticalLines);
    }
    let c = cross(&l1.coeffs, &l2.coeffs);
    ProjPoint::new(c[0].clone(), c[1].clone(), c[2].clone())
}

fn det3(m: &[[CycloElement; 3]; 3]) -> CycloElement {
    let a = &m[0];
    let b = &m[1];
    let c = &m[2];
    let t0 = &a[0] * &(&(&b[1] * &c[2]) - &(&b[2] * &c[1]));
    let t1 = &a[1] * &(&(&b[0] * &c[2]) - &(&b[2] * &c[0]));
    let t2 = &a[2] * &(&(&b[0] * &c[1]) - &(&b[1] * &c[0]));
    &(&t0 - &t1) + &t2
}

/// Exact collinearity: the 3x3 coordinate determinant vanishes.
pub fn collinear(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> bool {
    det3(&[p.coords.clone(), q.coords.clone(), r.coords.clone()]).is_zero()
}

/// An invertible projective transformation, stored with its inverse.
#[derive(Debug, Clone)]
pub struct Transform {
    mat: [[CycloElement; 3]; 3],
    inv: [[CycloElement; 3]; 3],
}

impl Transform {
    pub fn new(mat: [[CycloElement; 3]; 3]) -> Result<Self> {
        let det = det3(&mat);
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let det_inv = det.inv()?;
        // Adjugate divided by the determinant.
        let cof = |r1: usize, c1: usize, r2: usize, c2: usize| {
            &(&mat[r1][c1] * &mat[r2][c2]) - &(&mat[r1][c2] * &mat[r2][c1])
        };
        let adj = [
            [cof(1, 1, 2, 2), -cof(0, 1, 2, 2), cof(0, 1, 1, 2)],
            [-cof(1, 0, 2, 2), cof(0, 0, 2, 2), -cof(0, 0, 1, 2)],
            [cof(1, 0, 2, 1), -cof(0, 0, 2, 1), cof(0, 0, 1, 1)],
        ];
        let inv = adj.map(|row| row.map(|e| &e * &det_inv));
        Ok(Transform { mat, inv })
    }

    pub fn identity(order: u64) -> Self {
        let e = |v: i64| CycloElement::from_integer(order, v);
        Transform::new([
            [e(1), e(0), e(0)],
            [e(0), e(1), e(0)],
            [e(0), e(0), e(1)],
        ])
        .expect("identity is invertible")
    }

    /// The scalar map [x : y : z] -> [c x : c y : z], which fixes every
    /// point at infinity.
    pub fn affine_scaling(c: &CycloElement) -> Result<Self> {
        let order = c.order();
        let zero = CycloElement::zero(order);
        let one = CycloElement::one(order);
        Transform::new([
            [c.clone(), zero.clone(), zero.clone()],
            [zero.clone(), c.clone(), zero.clone()],
            [zero.clone(), zero, one],
        ])
    }

    pub fn matrix(&self) -> &[[CycloElement; 3]; 3] {
        &self.mat
    }

    pub fn inverse(&self) -> Transform {
        Transform { mat: self.inv.clone(), inv: self.mat.clone() }
    }

    /// Composition: (self.compose(other))(p) = self(other(p)).
    pub fn compose(&self, other: &Transform) -> Transform {
        let mul = |a: &[[CycloElement; 3]; 3], b: &[[CycloElement; 3]; 3]| {
            std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    let mut acc = &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
                    acc = &acc + &(&a[i][2] * &b[2][j]);
                    acc
                })
            })
        };
        Transform {
            mat: mul(&self.mat, &other.mat),
            inv: mul(&other.inv, &self.inv),
        }
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let v: [CycloElement; 3] = std::array::from_fn(|i| dot(&self.mat[i], &p.coords));
        ProjPoint::new(v[0].clone(), v[1].clone(), v[2].clone())
            .expect("invertible transform of a nonzero vector is nonzero")
    }

    /// Image of a line under the transform: coefficients map by the
    /// inverse transpose.
    pub fn apply_line(&self, l: &ProjLine) -> ProjLine {
        let col = |j: usize| -> [CycloElement; 3] {
            std::array::from_fn(|i| self.inv[i][j].clone())
        };
        let v: [CycloElement; 3] = std::array::from_fn(|j| dot(&col(j), &l.coeffs));
        ProjLine::new(v[0].clone(), v[1].clone(), v[2].clone())
            .expect("invertible transform of a nonzero line is nonzero")
    }

    /// Pull a line in the image back to the source: l = mat^T l'.
    pub fn pullback_line(&self, l: &ProjLine) -> ProjLine {
        let col = |j: usize| -> [CycloElement; 3] {
            std::array::from_fn(|i| self.mat[i][j].clone())
        };
        let v: [CycloElement; 3] = std::array::from_fn(|j| dot(&col(j), &l.coeffs));
        ProjLine::new(v[0].clone(), v[1].clone(), v[2].clone())
            .expect("invertible transform of a nonzero line is nonzero")
    }
}

/// A transform sending `p` to [1 : 0 : 0] and `l` to the line at infinity
/// z = 0, built by deterministic pivot completion. Requires `p` on `l`.
pub fn normalization_transform(p: &ProjPoint, l: &ProjLine) -> Result<Transform> {
    if !incident(p, l) {
        return Err(Error::NotIncident);
    }
    let order = num_integer::lcm(
        num_integer::lcm(p.coords[0].order(), p.coords[2].order()),
        num_integer::lcm(l.coeffs[0].order(), l.coeffs[2].order()),
    );
    let lift = |e: &CycloElement| e.embed(order).expect("lcm embedding");
    let pc: [CycloElement; 3] = std::array::from_fn(|i| lift(&p.coords[i]));
    let lc: [CycloElement; 3] = std::array::from_fn(|i| lift(&l.coeffs[i]));
    let basis = |k: usize| -> [CycloElement; 3] {
        std::array::from_fn(|i| {
            CycloElement::from_integer(order, if i == k { 1 } else { 0 })
        })
    };

    // Row 1: a basis vector not orthogonal to p.
    let pivot = pc.iter().position(|c| !c.is_zero()).expect("point is nonzero");
    let r1 = basis(pivot);
    // Row 3: the line itself, so that l maps to z = 0.
    let r3 = lc.clone();
    // Row 2: orthogonal to p and independent of the other rows; try the
    // basis vectors first, then cross products p x e_k.
    let mut candidates: Vec<[CycloElement; 3]> = (0..3).map(basis).collect();
    for k in 0..3 {
        candidates.push(cross(&pc, &basis(k)));
    }
    for r2 in candidates {
        if r2.iter().all(|c| c.is_zero()) || !dot(&r2, &pc).is_zero() {
            continue;
        }
        let mat = [r1.clone(), r2, r3.clone()];
        if let Ok(t) = Transform::new(mat) {
            let image = t.apply(p);
            debug_assert_eq!(image, ProjPoint::from_integers(order, 1, 0, 0)?);
            debug_assert_eq!(t.apply_line(l), ProjLine::at_infinity(order));
            return Ok(t);
        }
    }
    Err(Error::InternalInconsistency(
        "pivot completion found no independent second row".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclofield::Rational;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};

    fn pt(x: i64, y: i64, z: i64) -> ProjPoint {
        ProjPoint::from_integers(4, x, y, z).unwrap()
    }

    fn ln(a: i64, b: i64, c: i64) -> ProjLine {
        ProjLine::from_integers(4, a, b, c).unwrap()
    }

    fn rand_elem(rng: &mut impl Rng, order: u64) -> CycloElement {
        let mut e = CycloElement::zero(order);
        let phi = crate::cyclofield::euler_phi(order) as usize;
        for j in 0..phi {
            let q = Rational::new(BigInt::from(rng.gen_range(-5..=5)), BigInt::from(rng.gen_range(1..=3)));
            e = &e + &CycloElement::zeta_pow(order, j as i64).unwrap().scale(&q);
        }
        e
    }

    fn rand_point(rng: &mut impl Rng, order: u64) -> ProjPoint {
        loop {
            let x = rand_elem(rng, order);
            let y = rand_elem(rng, order);
            let z = rand_elem(rng, order);
            if let Ok(p) = ProjPoint::new(x, y, z) {
                return p;
            }
        }
    }

    #[test]
    fn incidence_basics() {
        assert!(incident(&pt(1, 0, 0), &ln(0, 0, 1)));
        assert!(incident(&pt(0, 0, 1), &ln(1, 1, 0)));
        assert!(incident(&pt(1, -1, 0), &ln(1, 1, 0)));
        assert!(!incident(&pt(1, 0, 0), &ln(1, 0, 0)));
    }

    #[test]
    fn join_and_meet() {
        assert_eq!(join(&pt(0, 0, 1), &pt(1, 0, 0)).unwrap(), ln(0, 1, 0));
        // join of the origin and the infinite point [1 : -1 : 0] is x + y = 0
        assert_eq!(join(&pt(0, 0, 1), &pt(1, -1, 0)).unwrap(), ln(1, 1, 0));
        assert_eq!(meet(&ln(1, 0, 0), &ln(0, 1, 0)).unwrap(), pt(0, 0, 1));
        assert!(matches!(join(&pt(1, 2, 1), &pt(1, 2, 1)), Err(Error::IdenticalPoints)));
        assert!(matches!(meet(&ln(1, 0, 0), &ln(1, 0, 0)), Err(Error::IdenticalLines)));
    }

    #[test]
    fn join_meet_duality_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let p = rand_point(&mut rng, 4);
            let q = rand_point(&mut rng, 4);
            if p == q {
                continue;
            }
            let l = join(&p, &q).unwrap();
            assert!(incident(&p, &l));
            assert!(incident(&q, &l));
        }
    }

    #[test]
    fn collinearity_by_determinant() {
        assert!(!collinear(&pt(1, 0, 0), &pt(0, 1, 0), &pt(0, 0, 1)));
        assert!(collinear(&pt(0, 0, 1), &pt(1, 0, 1), &pt(2, 0, 1)));
    }

    #[test]
    fn fermat_collinearity_criterion() {
        // [0 : 1 : -w^a], [-w^b : 0 : 1], [1 : -w^c : 0] are collinear iff
        // a + b + c = 0 mod n; the determinant expands to 1 - w^(a+b+c).
        let n = 3u64;
        let order = 12u64;
        let w = |k: i64| CycloElement::zeta_pow(order, (order as i64 / n as i64) * k).unwrap();
        let zero = CycloElement::zero(order);
        let one = CycloElement::one(order);
        for a in 0..n as i64 {
            for b in 0..n as i64 {
                for c in 0..n as i64 {
                    let pa = ProjPoint::new(zero.clone(), one.clone(), -w(a)).unwrap();
                    let pb = ProjPoint::new(-w(b), zero.clone(), one.clone()).unwrap();
                    let pc = ProjPoint::new(one.clone(), -w(c), zero.clone()).unwrap();
                    let det_value = &one - &w(a + b + c);
                    assert_eq!(collinear(&pa, &pb, &pc), det_value.is_zero());
                    assert_eq!(det_value.is_zero(), (a + b + c) % n as i64 == 0);
                }
            }
        }
    }

    #[test]
    fn transform_roundtrip_and_line_action() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..25 {
            let mat: [[CycloElement; 3]; 3] =
                std::array::from_fn(|_| std::array::from_fn(|_| rand_elem(&mut rng, 4)));
            let t = match Transform::new(mat) {
                Ok(t) => t,
                Err(_) => continue,
            };
            let p = rand_point(&mut rng, 4);
            let q = rand_point(&mut rng, 4);
            if p == q {
                continue;
            }
            assert_eq!(t.inverse().apply(&t.apply(&p)), p);
            let l = join(&p, &q).unwrap();
            assert!(incident(&t.apply(&p), &t.apply_line(&l)));
            // collinearity is preserved
            let r = rand_point(&mut rng, 4);
            assert_eq!(
                collinear(&p, &q, &r),
                collinear(&t.apply(&p), &t.apply(&q), &t.apply(&r))
            );
        }
    }

    #[test]
    fn scaling_fixes_infinite_points() {
        let c = &CycloElement::one(4) + &CycloElement::i(4).unwrap();
        let t = Transform::affine_scaling(&c).unwrap();
        let p = pt(3, -1, 0);
        assert_eq!(t.apply(&p), p);
        assert_eq!(t.apply(&pt(0, 0, 1)), pt(0, 0, 1));
    }

    #[test]
    fn normalization_examples() {
        // p = [0:0:1], l: x = 0 -> the coordinate permutation (x,y,z)->(z,y,x).
        let t = normalization_transform(&pt(0, 0, 1), &ln(1, 0, 0)).unwrap();
        let e = |v: i64| CycloElement::from_integer(4, v);
        let expect = [
            [e(0), e(0), e(1)],
            [e(0), e(1), e(0)],
            [e(1), e(0), e(0)],
        ];
        assert_eq!(t.matrix(), &expect);

        // p = [1:0:0], l: z = 0 -> identity.
        let t = normalization_transform(&pt(1, 0, 0), &ln(0, 0, 1)).unwrap();
        assert_eq!(t.matrix(), Transform::identity(4).matrix());

        // p = [0:1:0], l: z = 0 -> swap of the first two coordinates.
        let t = normalization_transform(&pt(0, 1, 0), &ln(0, 0, 1)).unwrap();
        let expect = [
            [e(0), e(1), e(0)],
            [e(1), e(0), e(0)],
            [e(0), e(0), e(1)],
        ];
        assert_eq!(t.matrix(), &expect);

        assert!(matches!(
            normalization_transform(&pt(1, 1, 1), &ln(1, 0, 0)),
            Err(Error::NotIncident)
        ));
    }

    #[test]
    fn normalization_postconditions_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let mut done = 0;
        while done < 100 {
            let p = rand_point(&mut rng, 4);
            let q = rand_point(&mut rng, 4);
            if p == q {
                continue;
            }
            let l = join(&p, &q).unwrap();
            let t = normalization_transform(&p, &l).unwrap();
            assert_eq!(t.apply(&p), pt(1, 0, 0));
            assert_eq!(t.apply_line(&l), ProjLine::at_infinity(4));
            done += 1;
        }
    }
}
