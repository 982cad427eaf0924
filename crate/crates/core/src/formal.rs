//! Type-level pipelines for the correspondence between [[SA, Id, B]] and
//! [[A, N, B]] under an asymptotic adjunction S ⊣ N.
//!
//! Nothing here is evaluated: 𝔄 has no finite model, so the functors are
//! words over the symbols S, N, 𝔄, K and every stage of a composite is only
//! checked for matching source and target.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sym {
    S,
    N,
    /// 𝔄
    A,
    K,
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sym::S => "S",
            Sym::N => "N",
            Sym::A => "𝔄",
            Sym::K => "K",
        })
    }
}

/// A composite of formal functors, outermost first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FWord(pub Vec<Sym>);

impl FWord {
    pub fn parse(s: &str) -> FWord {
        FWord(
            s.chars()
                .filter_map(|c| match c {
                    'S' => Some(Sym::S),
                    'N' => Some(Sym::N),
                    'A' | '𝔄' => Some(Sym::A),
                    'K' => Some(Sym::K),
                    _ => None,
                })
                .collect(),
        )
    }

    pub fn then(&self, o: &FWord) -> FWord {
        FWord(self.0.iter().chain(&o.0).copied().collect())
    }

    fn power(s: Sym, n: usize) -> FWord {
        FWord(vec![s; n])
    }
}

impl fmt::Display for FWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("Id");
        }
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            match j - i {
                1 => write!(f, "{}", self.0[i])?,
                n => write!(f, "{}^{}", self.0[i], n)?,
            }
            i = j;
        }
        Ok(())
    }
}

/// A word applied to a base algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FObj {
    pub word: FWord,
    pub base: String,
}

impl FObj {
    pub fn new(word: &str, base: &str) -> Self {
        FObj { word: FWord::parse(word), base: base.into() }
    }

    fn apply(&self, w: &FWord) -> FObj {
        FObj { word: w.then(&self.word), base: self.base.clone() }
    }
}

impl fmt::Display for FObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.0.is_empty() {
            f.write_str(&self.base)
        } else {
            write!(f, "{}{}", self.word, self.base)
        }
    }
}

/// A formal *-homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FMor {
    pub name: String,
    pub src: FObj,
    pub tgt: FObj,
}

/// A formal natural transformation between words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FNat {
    pub name: String,
    pub src: FWord,
    pub tgt: FWord,
}

impl FNat {
    pub fn new(name: &str, src: &str, tgt: &str) -> Self {
        FNat { name: name.into(), src: FWord::parse(src), tgt: FWord::parse(tgt) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub label: String,
    pub src: FObj,
    pub tgt: FObj,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pipeline {
    pub stages: Vec<Stage>,
}

impl Pipeline {
    /// The objects passed through, first to last.
    pub fn objects(&self) -> Vec<String> {
        let mut out = vec![self.stages[0].src.to_string()];
        out.extend(self.stages.iter().map(|s| s.tgt.to_string()));
        out
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.objects().join(" -> "))
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FormalError {
    /// `stage` counts from 0; the input checks use stage 0 and the final
    /// shape check uses one past the last stage.
    #[error("stage {stage} ({label}): expected {expected}, found {found}")]
    TypeMismatch { stage: usize, label: String, expected: String, found: String },
}

fn mismatch(stage: usize, label: &str, expected: impl fmt::Display, found: impl fmt::Display) -> FormalError {
    FormalError::TypeMismatch { stage, label: label.into(), expected: expected.to_string(), found: found.to_string() }
}

/// Number n when `w` is 𝔄ⁿK.
fn a_power_k(w: &FWord) -> Option<usize> {
    let (last, rest) = w.0.split_last()?;
    (*last == Sym::K && rest.iter().all(|s| *s == Sym::A)).then_some(rest.len())
}

/// Component L·α·R at X, with R read off the incoming object.
fn whisker(stage: usize, label: &str, left: &FWord, alpha: &FNat, incoming: &FObj) -> Result<Stage, FormalError> {
    let w = &incoming.word.0;
    let need = left.then(&alpha.src);
    if w.len() < need.0.len() || w[..need.0.len()] != need.0[..] {
        return Err(mismatch(stage, label, format!("{need}…{}", incoming.base), incoming));
    }
    let right = FWord(w[need.0.len()..].to_vec());
    let tgt = FObj { word: left.then(&alpha.tgt).then(&right), base: incoming.base.clone() };
    Ok(Stage { label: label.into(), src: incoming.clone(), tgt })
}

fn push_functor(stage: usize, label: &str, f: &FWord, m: &FMor, incoming: &FObj) -> Result<Stage, FormalError> {
    let src = m.src.apply(f);
    if src != *incoming {
        return Err(mismatch(stage, label, incoming, &src));
    }
    Ok(Stage { label: label.into(), src, tgt: m.tgt.apply(f) })
}

/// Φ(φ) = Nφ ∘ η_A for φ : SA → 𝔄ⁿ𝐊B.
pub fn build_phi(phi: &FMor, eta: &FNat) -> Result<Pipeline, FormalError> {
    if phi.src.word != FWord(vec![Sym::S]) {
        return Err(mismatch(0, "input", format!("S{}", phi.src.base), &phi.src));
    }
    let n = a_power_k(&phi.tgt.word).ok_or_else(|| mismatch(0, "input", format!("𝔄^nK{}", phi.tgt.base), &phi.tgt))?;
    if !eta.src.0.is_empty() {
        return Err(mismatch(0, "eta", "Id", &eta.src));
    }
    let a = FObj { word: FWord::default(), base: phi.src.base.clone() };
    let s0 = whisker(0, "eta A", &FWord::default(), eta, &a)?;
    let s1 = push_functor(1, "N phi", &FWord(vec![Sym::N]), phi, &s0.tgt)?;
    let want = FObj { word: FWord(vec![Sym::N]).then(&FWord::power(Sym::A, n)).then(&FWord(vec![Sym::K])), base: phi.tgt.base.clone() };
    if s1.tgt != want {
        return Err(mismatch(2, "result", &want, &s1.tgt));
    }
    Ok(Pipeline { stages: vec![s0, s1] })
}

/// Ψ(ψ) = 𝔄ⁿ⁺¹θB ∘ 𝔄κ^{K,𝔄ⁿ}KB ∘ ε𝔄ⁿKB ∘ Sψ for ψ : A → N𝔄ⁿ𝐊B.
pub fn build_psi(psi: &FMor, eps: &FNat, kappa: &FNat, theta: &FNat) -> Result<Pipeline, FormalError> {
    if !psi.src.word.0.is_empty() {
        return Err(mismatch(0, "input", &psi.src.base, &psi.src));
    }
    let n = match psi.tgt.word.0.split_first() {
        Some((Sym::N, rest)) => a_power_k(&FWord(rest.to_vec())),
        _ => None,
    }
    .ok_or_else(|| mismatch(0, "input", format!("N𝔄^nK{}", psi.tgt.base), &psi.tgt))?;
    let sa = FObj { word: FWord(vec![Sym::S]), base: psi.src.base.clone() };
    let s0 = push_functor(0, "S psi", &FWord(vec![Sym::S]), psi, &sa)?;
    let s1 = whisker(1, "eps A^n K B", &FWord::default(), eps, &s0.tgt)?;
    let s2 = whisker(2, "A kappa K B", &FWord(vec![Sym::A]), kappa, &s1.tgt)?;
    let s3 = whisker(3, "A^(n+1) theta B", &FWord::power(Sym::A, n + 1), theta, &s2.tgt)?;
    let want = FObj { word: FWord::power(Sym::A, n + 1).then(&FWord(vec![Sym::K])), base: psi.tgt.base.clone() };
    if s3.tgt != want {
        return Err(mismatch(4, "result", &want, &s3.tgt));
    }
    Ok(Pipeline { stages: vec![s0, s1, s2, s3] })
}

/// The well-typed inputs for a given n.
pub struct WellTyped {
    pub phi: FMor,
    pub psi: FMor,
    pub eta: FNat,
    pub eps: FNat,
    pub kappa: FNat,
    pub theta: FNat,
}

pub fn well_typed(n: usize) -> WellTyped {
    let an = "A".repeat(n);
    WellTyped {
        phi: FMor { name: "phi".into(), src: FObj::new("S", "A"), tgt: FObj::new(&format!("{an}K"), "B") },
        psi: FMor { name: "psi".into(), src: FObj::new("", "A"), tgt: FObj::new(&format!("N{an}K"), "B") },
        eta: FNat::new("eta", "", "NS"),
        eps: FNat::new("eps", "SN", "AK"),
        kappa: FNat::new("kappa", &format!("K{an}"), &format!("{an}K")),
        theta: FNat::new("theta", "KK", "K"),
    }
}

/// A mistyped input together with the stage expected to reject it.
pub struct Variant {
    pub name: &'static str,
    pub expected_stage: usize,
    pub run: Box<dyn Fn() -> Result<Pipeline, FormalError>>,
}

/// Twelve mistyped inputs, each rejected at a known stage.
pub fn mistyped_variants(n: usize) -> Vec<Variant> {
    let an = "A".repeat(n);
    let mut out: Vec<Variant> = Vec::new();
    let mut phi_case = |name: &'static str, stage: usize, f: Box<dyn Fn(&mut WellTyped)>| {
        out.push(Variant {
            name,
            expected_stage: stage,
            run: Box::new(move || {
                let mut w = well_typed(n);
                f(&mut w);
                build_phi(&w.phi, &w.eta)
            }),
        })
    };
    phi_case("phi from A", 0, Box::new(|w| w.phi.src = FObj::new("", "A")));
    phi_case("phi into A^n K A", 0, Box::new(move |w| w.phi.tgt = FObj::new(&format!("{}KA", "A".repeat(n)), "B")));
    phi_case("eta into SN", 1, Box::new(|w| w.eta.tgt = FWord::parse("SN")));
    phi_case("eta from S", 0, Box::new(|w| w.eta.src = FWord::parse("S")));
    phi_case("eta into N", 1, Box::new(|w| w.eta.tgt = FWord::parse("N")));
    let mut psi_case = |name: &'static str, stage: usize, f: Box<dyn Fn(&mut WellTyped)>| {
        out.push(Variant {
            name,
            expected_stage: stage,
            run: Box::new(move || {
                let mut w = well_typed(n);
                f(&mut w);
                build_psi(&w.psi, &w.eps, &w.kappa, &w.theta)
            }),
        })
    };
    psi_case("psi from SA", 0, Box::new(|w| w.psi.src = FObj::new("S", "A")));
    psi_case("psi without N", 0, Box::new(move |w| w.psi.tgt = FObj::new(&format!("{}K", "A".repeat(n)), "B")));
    psi_case("eps from NS", 1, Box::new(|w| w.eps.src = FWord::parse("NS")));
    psi_case("eps into KA", 2, Box::new(|w| w.eps.tgt = FWord::parse("KA")));
    psi_case("kappa from A^(n+1) K", 2, Box::new(move |w| w.kappa.src = FWord::parse(&format!("A{}K", "A".repeat(n)))));
    let wrong = format!("K{an}A");
    psi_case("kappa with one A too many", 2, Box::new(move |w| w.kappa.src = FWord::parse(&wrong)));
    psi_case("theta from K", 4, Box::new(|w| w.theta.src = FWord::parse("K")));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn well_typed_stage_objects() {
        let w = well_typed(2);
        let phi = build_phi(&w.phi, &w.eta).unwrap();
        assert_eq!(phi.objects(), vec!["A", "NSA", "N𝔄^2KB"]);
        let psi = build_psi(&w.psi, &w.eps, &w.kappa, &w.theta).unwrap();
        assert_eq!(psi.objects(), vec!["SA", "SN𝔄^2KB", "𝔄K𝔄^2KB", "𝔄^3K^2B", "𝔄^3KB"]);
    }

    #[test]
    fn n_zero_works() {
        let w = well_typed(0);
        assert!(build_phi(&w.phi, &w.eta).is_ok());
        assert_eq!(build_psi(&w.psi, &w.eps, &w.kappa, &w.theta).unwrap().to_string(), "SA -> SNKB -> 𝔄K^2B -> 𝔄K^2B -> 𝔄KB");
    }
}
