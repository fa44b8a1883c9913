//! Named parameter sets with their externally quoted values.

use crate::code::{Cwe, QfCode, Variant};
use crate::error::Result;
use crate::gf::FieldTower;
use crate::literal::Literal;
use crate::quadform::{FrobTerm, QuadForm, QuadFormSpec, TraceSquareTerm};

#[derive(Clone, Debug)]
pub enum Term {
    /// `Tr(coeff * x^(q^power + 1))`, `coeff` in `F_{q^m1}`.
    Frob { coeff: Literal, power: usize },
    /// `scale * Tr(inner * x)^2`, `scale` in `F_q`, `inner` in `F_{q^m1}`.
    TraceSquare { scale: Literal, inner: Literal },
}

/// Values quoted alongside a preset, to be checked rather than trusted.
#[derive(Clone, Debug)]
pub struct Reference {
    pub n: u64,
    pub k: usize,
    pub d: u64,
    pub hierarchy: Vec<u64>,
    pub rank: usize,
    pub eps_q: i32,
    /// Complete weight enumerator as `(symbol counts in canonical order, multiplicity)`.
    /// Where the quoted form fixes symbols only up to their quadratic character,
    /// compare it up to a relabeling of the nonzero symbols.
    pub cwe: Vec<(Vec<u64>, u64)>,
}

impl Reference {
    pub fn cwe_map(&self) -> Cwe {
        self.cwe.iter().cloned().collect()
    }
}

#[derive(Clone, Debug)]
pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    pub p: u64,
    pub m: usize,
    pub m1: usize,
    pub m2: usize,
    pub variant: Variant,
    pub terms: Vec<Term>,
    pub descent_n: Option<u64>,
    pub reference: Option<Reference>,
}

pub fn build_spec(tower: &FieldTower, terms: &[Term]) -> Result<QuadFormSpec> {
    let mut spec = QuadFormSpec::default();
    for t in terms {
        match t {
            Term::Frob { coeff, power } => {
                spec.frobenius_terms.push(FrobTerm {
                    coeff: coeff.resolve(&tower.fq1)?,
                    power: *power,
                });
            }
            Term::TraceSquare { scale, inner } => spec.trace_square_terms.push(TraceSquareTerm {
                scale: scale.resolve(&tower.fq)?,
                inner: inner.resolve(&tower.fq1)?,
            }),
        }
    }
    Ok(spec)
}

impl Preset {
    pub fn tower(&self) -> Result<FieldTower> {
        FieldTower::build(self.p, self.m, self.m1, self.m2)
    }

    pub fn code(&self) -> Result<QfCode> {
        let t = self.tower()?;
        let spec = build_spec(&t, &self.terms)?;
        QfCode::new(QuadForm::new(&t, spec)?, self.variant)
    }
}

fn frob(c: i64, power: usize) -> Term {
    Term::Frob {
        coeff: Literal::Int(c),
        power,
    }
}

fn frob_prim() -> Term {
    Term::Frob {
        coeff: Literal::Text("g".into()),
        power: 0,
    }
}

fn trsq(scale: &str) -> Term {
    Term::TraceSquare {
        scale: Literal::Text(scale.into()),
        inner: Literal::Int(1),
    }
}

fn reference(
    (n, k, d): (u64, usize, u64),
    hierarchy: &[u64],
    rank: usize,
    eps_q: i32,
    cwe: &[(&[u64], u64)],
) -> Option<Reference> {
    let cwe = cwe.iter().map(|(c, m)| (c.to_vec(), *m)).collect();
    Some(Reference {
        n,
        k,
        d,
        hierarchy: hierarchy.to_vec(),
        rank,
        eps_q,
        cwe,
    })
}

pub fn all() -> Vec<Preset> {
    use Variant::*;
    vec![
        Preset {
            name: "example-3.1",
            summary: "q=3, F_81 x F_27, Q = Tr(x^2), homogeneous",
            p: 3, m: 1, m1: 4, m2: 3,
            variant: Homogeneous,
            terms: vec![frob(1, 0)],
            descent_n: None,
            reference: reference(
                (2186, 4, 1458),
                &[1458, 1944, 2106, 2166], 4, -1,
                &[(&[2186, 0, 0], 1), (&[728, 729, 729], 78), (&[566, 810, 810], 2)],
            ),
        },
        Preset {
            name: "example-3.2",
            summary: "q=5, F_125 x F_25, Q = Tr(x^2) - (1/3) Tr(x)^2, homogeneous",
            p: 5, m: 1, m1: 3, m2: 2,
            variant: Homogeneous,
            terms: vec![frob(1, 0), trsq("-1/3")],
            descent_n: None,
            reference: reference(
                (3124, 3, 2500),
                &[2500, 3000, 3120], 2, -1,
                &[(&[3124, 0, 0, 0, 0], 1), (&[624, 625, 625, 625, 625], 120), (&[124, 750, 750, 750, 750], 4)],
            ),
        },
        Preset {
            name: "example-3.3",
            summary: "q=9, F_729 x F_81, Q = Tr(g x^2) with g primitive in F_729, homogeneous",
            p: 3, m: 2, m1: 3, m2: 2,
            variant: Homogeneous,
            terms: vec![frob_prim()],
            descent_n: None,
            reference: reference(
                (59048, 3, 52488),
                &[52488, 52830, 58968], 3, -1,
                &[
                    (&[59048, 0, 0, 0, 0, 0, 0, 0, 0], 1),
                    (&[6560, 6561, 6561, 6561, 6561, 6561, 6561, 6561, 6561], 720),
                    (&[6560, 5832, 5832, 5832, 5832, 7290, 7290, 7290, 7290], 4),
                    (&[6560, 7290, 7290, 7290, 7290, 5832, 5832, 5832, 5832], 4),
                ],
            ),
        },
        Preset {
            name: "example-3.4",
            summary: "q=5, F_25 x F_125, Q = Tr(x^2) - (1/2) Tr(x)^2, homogeneous",
            p: 5, m: 1, m1: 2, m2: 3,
            variant: Homogeneous,
            terms: vec![frob(1, 0), trsq("-1/2")],
            descent_n: None,
            reference: reference(
                (3124, 4, 2500),
                &[2500, 3000, 3100, 3120], 1, 1,
                &[
                    (&[3124, 0, 0, 0, 0], 1),
                    (&[624, 625, 625, 625, 625], 620),
                    (&[624, 1250, 1250, 0, 0], 2),
                    (&[624, 0, 0, 1250, 1250], 2),
                ],
            ),
        },
        Preset {
            name: "example-3.5",
            summary: "q=3, F_243 x F_27, Q = Tr(2x^10 + x^2), affine",
            p: 3, m: 1, m1: 5, m2: 3,
            variant: Affine,
            terms: vec![frob(2, 2), frob(1, 0)],
            descent_n: None,
            reference: reference(
                (6561, 5, 4131),
                &[4131, 5741, 6291, 6471, 6561], 4, -1,
                &[
                    (&[6561, 0, 0], 1),
                    (&[0, 6561, 0], 1),
                    (&[0, 0, 6561], 1),
                    (&[2187, 2187, 2187], 234),
                    (&[1701, 2430, 2430], 2),
                    (&[2430, 1701, 2430], 2),
                    (&[2430, 2430, 1701], 2),
                ],
            ),
        },
        Preset {
            name: "example-3.6",
            summary: "q=3, F_27 x F_81, Q = Tr(g x^2) with g primitive in F_27, affine",
            p: 3, m: 1, m1: 3, m2: 4,
            variant: Affine,
            terms: vec![frob_prim()],
            descent_n: None,
            reference: reference(
                (2187, 6, 1215),
                &[1215, 1863, 2079, 2151, 2175, 2187], 3, -1,
                &[
                    (&[2187, 0, 0], 1),
                    (&[0, 2187, 0], 1),
                    (&[0, 0, 2187], 1),
                    (&[729, 729, 729], 720),
                    (&[729, 972, 486], 1),
                    (&[486, 729, 972], 1),
                    (&[972, 486, 729], 1),
                    (&[729, 486, 972], 1),
                    (&[972, 729, 486], 1),
                    (&[486, 972, 729], 1),
                ],
            ),
        },
        Preset {
            name: "descent-5-2-1-1-n2",
            summary: "q=25, F_25 x F_25, Q = x^2, homogeneous, descended with N=2 (violates gcd(N, (q-1)/(p-1)) = 1)",
            p: 5, m: 2, m1: 1, m2: 1,
            variant: Homogeneous,
            terms: vec![frob(1, 0)],
            descent_n: Some(2),
            reference: None,
        },
        Preset {
            name: "descent-7-2-1-1-n3",
            summary: "q=49, F_49 x F_49, Q = x^2, homogeneous, descended with N=3",
            p: 7, m: 2, m1: 1, m2: 1,
            variant: Homogeneous,
            terms: vec![frob(1, 0)],
            descent_n: Some(3),
            reference: None,
        },
    ]
}

pub fn find(name: &str) -> Option<Preset> {
    all().into_iter().find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_build_with_quoted_invariants() {
        for p in all() {
            let c = p.code().unwrap();
            if let Some(r) = &p.reference {
                let a = c.analysis();
                assert_eq!((a.rank, a.eps_q), (r.rank, r.eps_q), "{}", p.name);
                assert_eq!(c.length(), r.n);
                assert_eq!(c.dimension(), r.k);
            }
        }
        assert!(all().len() >= 7);
        assert!(find("example-3.5").is_some());
    }
}
