//! JSON documents describing a DGLA over a coefficient algebra, optionally
//! with an element `omega` and an L-infinity morphism out of it.
//!
//! ```json
//! {
//!   "coeffs": {"generators": [0], "truncation": 3},
//!   "algebra": {"named": "end_v"},
//!   "omega": [{"coeff": "1", "word": ["hbar.E10"]}],
//!   "morphism": {"identity": true}
//! }
//! ```
//!
//! Coefficients default to the base field; the morphism target defaults to
//! the source algebra.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coalg::{CoalgElem, GradedModule, Intent, Letter, TaylorSeq, TaylorTable, WordJson};
use crate::dga::{truncated_poly_dga, CoeffDga, CoeffDgaJson};
use crate::error::{Error, Result};
use crate::linf::tensor::tensor_dgla;
use crate::linf::{q_from_dgla, FiniteDgla, LinfAlgebra, LinfMorphism};
use crate::random;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    /// Free graded-commutative algebra with even generators truncated at
    /// `g^truncation = 0`.
    Truncated { generators: Vec<i32>, truncation: usize },
    Tables(CoeffDgaJson),
}

impl CoeffJson {
    pub fn build(&self) -> Result<CoeffDga> {
        match self {
            CoeffJson::Truncated { generators, truncation } => truncated_poly_dga(generators, *truncation),
            CoeffJson::Tables(t) => CoeffDga::from_json(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DglaJson {
    /// One of `sl2`, `end_v`, `end_v_sub`, `heisenberg`.
    Named { named: String },
    /// `A (x) g` for a coefficient algebra `A` and a DGLA `g`.
    Tensor { tensor: CoeffJson, with: Box<DglaJson> },
    /// `d`: `(i, k, c)` means `d e_i` has `c e_k`; `bracket`: `(i, j, k, c)`
    /// means `[e_i, e_j]` has `c e_k`.
    Tables {
        generators: Vec<Letter>,
        #[serde(default)]
        d: Vec<(usize, usize, Rational)>,
        #[serde(default)]
        bracket: Vec<(usize, usize, usize, Rational)>,
    },
}

impl DglaJson {
    pub fn build(&self) -> Result<FiniteDgla> {
        match self {
            DglaJson::Named { named } => match named.as_str() {
                "sl2" => Ok(random::sl2()),
                "end_v" => Ok(random::end_v()),
                "end_v_sub" => Ok(random::end_v_sub()),
                "heisenberg" => Ok(random::heisenberg()),
                other => Err(Error::Json(format!("unknown named algebra `{other}`"))),
            },
            DglaJson::Tensor { tensor, with } => tensor_dgla(&tensor.build()?, &with.build()?),
            DglaJson::Tables { generators, d, bracket } => {
                let gens: Vec<(&str, i32)> = generators.iter().map(|l| (l.name.as_str(), l.degree)).collect();
                FiniteDgla::from_entries(&gens, d, bracket)
            }
        }
    }

    pub fn from_dgla(g: &FiniteDgla) -> Self {
        let mut d = Vec::new();
        let mut bracket = Vec::new();
        for (i, v) in g.d_table().iter().enumerate() {
            d.extend(v.iter().map(|(k, c)| (i, *k, c.clone())));
        }
        for (i, row) in g.bracket_table().iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                bracket.extend(v.iter().map(|(k, c)| (i, j, *k, c.clone())));
            }
        }
        DglaJson::Tables {
            generators: g.letters().to_vec(),
            d,
            bracket,
        }
    }
}

/// One Taylor coefficient `d^j Psi(word) = value`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaylorEntryJson {
    pub word: Vec<String>,
    pub value: Vec<WordJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorphismJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<DglaJson>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub identity: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub taylor: Vec<TaylorEntryJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<CoeffJson>,
    pub algebra: DglaJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<WordJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism: Option<MorphismJson>,
    /// Coefficients for `extend`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extend_over: Option<CoeffJson>,
}

/// A loaded instance.
pub struct Instance {
    pub coeffs: Arc<CoeffDga>,
    pub dgla: FiniteDgla,
    pub algebra: LinfAlgebra,
    pub omega: Option<CoalgElem>,
    pub target: Option<FiniteDgla>,
    pub morphism: Option<LinfMorphism>,
    pub extend_over: Option<Arc<CoeffDga>>,
}

impl Instance {
    pub fn from_str(text: &str, cap: usize) -> Result<Self> {
        let j: InstanceJson = serde_json::from_str(text)?;
        Self::load(&j, cap)
    }

    /// Builds every part; `omega` is read with word-order cap `cap`.
    pub fn load(j: &InstanceJson, cap: usize) -> Result<Self> {
        let coeffs = Arc::new(match &j.coeffs {
            Some(c) => c.build()?,
            None => CoeffDga::base_field(),
        });
        coeffs.check().into_result()?;
        let dgla = j.algebra.build()?;
        let algebra = q_from_dgla(&dgla, coeffs.clone())?;
        let omega = match &j.omega {
            Some(w) => Some(CoalgElem::from_json(algebra.module(), w, cap)?),
            None => None,
        };
        let (target, morphism) = match &j.morphism {
            None => (None, None),
            Some(mj) => {
                let h = match &mj.target {
                    Some(t) => t.build()?,
                    None => dgla.clone(),
                };
                let tgt = q_from_dgla(&h, coeffs.clone())?;
                let psi = if mj.identity {
                    if mj.target.is_some() || !mj.taylor.is_empty() {
                        return Err(Error::Json("an identity morphism takes no target or taylor entries".into()));
                    }
                    LinfMorphism::identity(&algebra)?
                } else {
                    let t = taylor_from_json(algebra.module(), tgt.module(), Intent::Morphism, &mj.taylor)?;
                    LinfMorphism::new(algebra.clone(), tgt, t)?
                };
                (Some(h), Some(psi))
            }
        };
        let extend_over = match &j.extend_over {
            Some(c) => {
                let a = c.build()?;
                a.check().into_result()?;
                Some(Arc::new(a))
            }
            None => None,
        };
        Ok(Instance {
            coeffs,
            dgla,
            algebra,
            omega,
            target,
            morphism,
            extend_over,
        })
    }
}

/// Reads Taylor entries; words may be given in any letter order.
pub fn taylor_from_json(
    source: &Arc<GradedModule>,
    target: &Arc<GradedModule>,
    intent: Intent,
    entries: &[TaylorEntryJson],
) -> Result<TaylorSeq> {
    let mut maps: Vec<TaylorTable> = Vec::new();
    for e in entries {
        if e.word.is_empty() {
            return Err(Error::Json("Taylor entry with an empty word".into()));
        }
        let letters = e
            .word
            .iter()
            .map(|n| source.index_of(n).ok_or_else(|| Error::Json(format!("unknown generator `{n}`"))))
            .collect::<Result<Vec<_>>>()?;
        let value = CoalgElem::from_json(target, &e.value, 1)?;
        let Some((w, neg)) = source.canonicalize(&letters) else {
            if value.is_zero() {
                continue;
            }
            return Err(Error::Structural(format!("word {} vanishes in the symmetric algebra", e.word.join(" "))));
        };
        let value = if neg { value.scale(&-Rational::one()) } else { value };
        let j = w.len();
        while maps.len() < j {
            maps.push(TaylorTable::new());
        }
        let slot = maps[j - 1].entry(w).or_insert_with(|| CoalgElem::zero(target, 1));
        *slot = slot.add(&value);
    }
    TaylorSeq::new(source.clone(), target.clone(), intent, maps)
}

pub fn taylor_to_json(t: &TaylorSeq) -> Vec<TaylorEntryJson> {
    let m = t.source();
    t.tables()
        .iter()
        .flat_map(|table| table.iter())
        .map(|(w, v)| TaylorEntryJson {
            word: w.0.iter().map(|&i| m.letters()[i].name.clone()).collect(),
            value: v.to_json(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linf::mc_residue;

    const END_V: &str = r#"{
        "coeffs": {"generators": [0], "truncation": 3},
        "algebra": {"named": "end_v"},
        "omega": [{"coeff": "1", "word": ["hbar.E10"]}],
        "morphism": {"identity": true}
    }"#;

    #[test]
    fn loads_named_instance() {
        let inst = Instance::from_str(END_V, 4).unwrap();
        assert_eq!(inst.coeffs.nilpotency_order(), Some(3));
        let omega = inst.omega.as_ref().unwrap();
        assert!(mc_residue(&inst.algebra, omega).unwrap().is_zero());
        assert!(inst.morphism.is_some());
    }

    #[test]
    fn tables_round_trip() {
        let g = random::sl2();
        let j = DglaJson::from_dgla(&g);
        let text = serde_json::to_string(&j).unwrap();
        let back: DglaJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.build().unwrap(), g);
    }

    #[test]
    fn taylor_round_trip_and_reordering() {
        let g = random::sl2();
        let c = Arc::new(CoeffDga::base_field());
        let a = q_from_dgla(&g, c).unwrap();
        let m = a.module();
        let entries = taylor_to_json(a.taylor());
        let back = taylor_from_json(m, m, Intent::Coderivation, &entries).unwrap();
        assert!(crate::linf::same_taylor(&back, a.taylor()));
        // letters of sl2 are odd in g[1], so swapping two of them flips the sign
        let mut swapped = entries.clone();
        for e in swapped.iter_mut().filter(|e| e.word.len() == 2) {
            e.word.reverse();
            for v in e.value.iter_mut() {
                v.coeff = -v.coeff.clone();
            }
        }
        let back = taylor_from_json(m, m, Intent::Coderivation, &swapped).unwrap();
        assert!(crate::linf::same_taylor(&back, a.taylor()));
    }

    #[test]
    fn tensor_form_names_letters() {
        let j: DglaJson =
            serde_json::from_str(r#"{"tensor": {"generators": [1, 1], "truncation": 3}, "with": {"named": "sl2"}}"#)
                .unwrap();
        let g = j.build().unwrap();
        assert_eq!(g.dim(), 12);
        assert!(g.letters().iter().any(|l| l.name == "theta1@e" && l.degree == 1));
    }

    #[test]
    fn rejects_unknown_names() {
        let bad = END_V.replace("E10", "nope");
        assert!(matches!(Instance::from_str(&bad, 4), Err(Error::Json(_))));
        let bad = END_V.replace("end_v", "gl7");
        assert!(matches!(Instance::from_str(&bad, 4), Err(Error::Json(_))));
    }
}
