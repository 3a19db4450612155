//! Presentations of crossed products `A ⋆ U(𝔤)` and their text format.
//!
//! ```toml
//! [base]
//! variables = ["x1", "x2", "x3"]
//! relation = "x1^2 + x2^2 + x3^2 - 1"   # optional
//! eliminate = "x3"                      # required with `relation`
//!
//! [lie]
//! generators = ["g1", "g2", "g3"]
//! aliases = { d = "g1" }
//! bracket.1.2 = [[3, 1]]                # g1 g2 - g2 g1 = g3 + cocycle.1.2
//! cocycle.1.2 = "x1"
//!
//! [action]
//! delta.g1.x1 = "1"                     # g1 x1 - x1 g1
//! ```
//!
//! Generator indices in `bracket`/`cocycle` keys are 1-based and must
//! satisfy `i < j`. Omitted brackets, cocycles and derivation images are 0.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use sha2::{Digest, Sha256};
use toml::{Table, Value};

use crate::coefficients::{default_names, BaseRing, CommPoly, DerivationSpec, QuotientPresentation, Rational};
use crate::error::{Error, Result};

/// Structure constants and cocycles of the Lie part.
///
/// For `i < j` the stored data means
/// `gᵢgⱼ − gⱼgᵢ = Σₖ cᵢⱼᵏ gₖ + aᵢⱼ` with `aᵢⱼ ∈ A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LiePresentation {
    generator_names: Vec<String>,
    aliases: BTreeMap<String, usize>,
    structure_constants: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
    cocycles: BTreeMap<(usize, usize), CommPoly>,
}

impl LiePresentation {
    pub fn new(generator_names: Vec<String>) -> Self {
        LiePresentation {
            generator_names,
            aliases: BTreeMap::new(),
            structure_constants: BTreeMap::new(),
            cocycles: BTreeMap::new(),
        }
    }

    /// Abelian Lie algebra on `g1..gn`.
    pub fn abelian(n: usize) -> Self {
        Self::new(default_names("g", n))
    }

    pub fn with_alias(mut self, alias: &str, generator: usize) -> Self {
        self.aliases.insert(alias.to_string(), generator);
        self
    }

    /// Sets `gᵢgⱼ − gⱼgᵢ = Σ c gₖ` (0-based, `i < j`).
    pub fn with_bracket(mut self, i: usize, j: usize, combination: Vec<(usize, Rational)>) -> Self {
        assert!(i < j);
        let combination: Vec<_> = combination.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if combination.is_empty() {
            self.structure_constants.remove(&(i, j));
        } else {
            self.structure_constants.insert((i, j), combination);
        }
        self
    }

    pub fn with_cocycle(mut self, i: usize, j: usize, a: CommPoly) -> Self {
        assert!(i < j);
        if a.is_zero() {
            self.cocycles.remove(&(i, j));
        } else {
            self.cocycles.insert((i, j), a);
        }
        self
    }

    pub fn ngens(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn aliases(&self) -> &BTreeMap<String, usize> {
        &self.aliases
    }

    /// Linear part of `[gᵢ, gⱼ]` for any `i, j` as a dense coefficient vector.
    pub fn bracket_vector(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.ngens()];
        if i == j {
            return v;
        }
        let (lo, hi, sign) = if i < j { (i, j, Rational::one()) } else { (j, i, -Rational::one()) };
        if let Some(comb) = self.structure_constants.get(&(lo, hi)) {
            for (k, c) in comb {
                v[*k] += &sign * c;
            }
        }
        v
    }

    /// Stored linear part for `i < j`.
    pub fn structure_constants(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        self.structure_constants.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    /// Stored cocycle for `i < j`.
    pub fn cocycle(&self, i: usize, j: usize) -> Option<&CommPoly> {
        self.cocycles.get(&(i, j))
    }

    pub fn is_abelian(&self) -> bool {
        self.structure_constants.is_empty() && self.cocycles.is_empty()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names
            .iter()
            .position(|n| n == name)
            .or_else(|| self.aliases.get(name).copied())
    }
}

/// Base domain, Lie data, and one derivation of `A` per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraPresentation {
    base: BaseRing,
    lie: LiePresentation,
    derivations: Vec<DerivationSpec>,
    source: String,
}

impl AlgebraPresentation {
    pub fn new(base: BaseRing, lie: LiePresentation, derivations: Vec<DerivationSpec>) -> Result<Self> {
        let m = base.nvars();
        let n = lie.ngens();
        if derivations.len() != n {
            return Err(Error::InvalidPresentation(format!(
                "{} derivations given for {} generators",
                derivations.len(),
                n
            )));
        }
        if derivations.iter().any(|d| d.images().len() != m) {
            return Err(Error::InvalidPresentation("derivation arity differs from base variable count".into()));
        }
        for ((i, j), comb) in &lie.structure_constants {
            if *j >= n || comb.iter().any(|(k, _)| *k >= n) {
                return Err(Error::InvalidPresentation(format!("bracket {}.{} out of range", i + 1, j + 1)));
            }
        }
        for ((_, j), a) in &lie.cocycles {
            if *j >= n || a.nvars() != m {
                return Err(Error::InvalidPresentation("cocycle out of range".into()));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for name in base.names().iter().chain(lie.generator_names()).chain(lie.aliases.keys()) {
            if !seen.insert(name.clone()) {
                return Err(Error::InvalidPresentation(format!("symbol `{name}` declared twice")));
            }
        }
        if lie.aliases.values().any(|&g| g >= n) {
            return Err(Error::InvalidPresentation("alias refers to a missing generator".into()));
        }
        let derivations = derivations
            .into_iter()
            .map(|d| DerivationSpec::new(d.images().iter().map(|p| base.normalize(p)).collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraPresentation { base, lie, derivations, source: String::from("inline") })
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = source.into();
        self
    }

    pub fn base(&self) -> &BaseRing {
        &self.base
    }

    pub fn lie(&self) -> &LiePresentation {
        &self.lie
    }

    pub fn derivations(&self) -> &[DerivationSpec] {
        &self.derivations
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    pub fn ngens(&self) -> usize {
        self.lie.ngens()
    }

    /// Where the presentation came from: a preset name or a file path.
    pub fn source(&self) -> &str {
        &self.source
    }

    /// The Ore extension `A[g₁, δ₁]` generated by the first generator.
    pub fn first_ore_subalgebra(&self) -> Result<AlgebraPresentation> {
        if self.ngens() == 0 {
            return Err(Error::Precondition("presentation has no generators".into()));
        }
        let mut lie = LiePresentation::new(vec![self.lie.generator_names[0].clone()]);
        for (alias, &g) in &self.lie.aliases {
            if g == 0 {
                lie.aliases.insert(alias.clone(), 0);
            }
        }
        AlgebraPresentation::new(self.base.clone(), lie, vec![self.derivations[0].clone()])
            .map(|p| p.with_source(format!("{}#A1", self.source)))
    }

    /// Deterministic text in the file format; the hash is taken over it.
    pub fn canonical_text(&self) -> String {
        let q = |s: &str| format!("\"{s}\"");
        let list = |v: &[String]| v.iter().map(|s| q(s)).collect::<Vec<_>>().join(", ");
        let mut out = String::new();
        out.push_str("[base]\n");
        let _ = writeln!(out, "variables = [{}]", list(self.base.names()));
        if let Some(quot) = self.base.quotient() {
            let _ = writeln!(out, "relation = {}", q(&self.base.format(quot.relation())));
            let _ = writeln!(out, "eliminate = {}", q(&self.base.names()[quot.eliminated_variable()]));
        }
        out.push_str("\n[lie]\n");
        let _ = writeln!(out, "generators = [{}]", list(self.lie.generator_names()));
        if !self.lie.aliases.is_empty() {
            let items: Vec<String> = self
                .lie
                .aliases
                .iter()
                .map(|(a, g)| format!("{a} = {}", q(&self.lie.generator_names[*g])))
                .collect();
            let _ = writeln!(out, "aliases = {{ {} }}", items.join(", "));
        }
        for ((i, j), comb) in &self.lie.structure_constants {
            let items: Vec<String> = comb.iter().map(|(k, c)| format!("[{}, {}]", k + 1, q(&c.to_string()))).collect();
            let _ = writeln!(out, "bracket.{}.{} = [{}]", i + 1, j + 1, items.join(", "));
        }
        for ((i, j), a) in &self.lie.cocycles {
            let _ = writeln!(out, "cocycle.{}.{} = {}", i + 1, j + 1, q(&self.base.format(a)));
        }
        out.push_str("\n[action]\n");
        for (g, d) in self.derivations.iter().enumerate() {
            for (v, img) in d.images().iter().enumerate() {
                if !img.is_zero() {
                    let _ = writeln!(
                        out,
                        "delta.{}.{} = {}",
                        self.lie.generator_names[g],
                        self.base.names()[v],
                        q(&self.base.format(img))
                    );
                }
            }
        }
        out
    }

    /// Hex SHA-256 of [`canonical_text`](Self::canonical_text).
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_text().as_bytes()))
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let bad = |m: String| Error::InvalidPresentation(m);
        let table: Table = toml::from_str(text).map_err(|e| bad(format!("{e}")))?;
        let empty = Table::new();
        let section = |name: &str| -> Result<&Table> {
            match table.get(name) {
                None => Ok(&empty),
                Some(Value::Table(t)) => Ok(t),
                Some(_) => Err(bad(format!("`{name}` must be a section"))),
            }
        };
        let strings = |v: Option<&Value>, what: &str| -> Result<Vec<String>> {
            match v {
                None => Ok(Vec::new()),
                Some(Value::Array(a)) => a
                    .iter()
                    .map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad(format!("`{what}` must hold strings"))))
                    .collect(),
                Some(_) => Err(bad(format!("`{what}` must be an array"))),
            }
        };
        let string = |v: &Value, what: &str| -> Result<String> {
            v.as_str().map(str::to_string).ok_or_else(|| bad(format!("`{what}` must be a string")))
        };

        let base_t = section("base")?;
        let names = strings(base_t.get("variables"), "variables")?;
        let quotient = match base_t.get("relation") {
            None => None,
            Some(rel) => {
                let rel = string(rel, "relation")?;
                let elim = base_t
                    .get("eliminate")
                    .ok_or_else(|| bad("`relation` requires `eliminate`".into()))?;
                let elim = string(elim, "eliminate")?;
                let v = names
                    .iter()
                    .position(|n| *n == elim)
                    .ok_or_else(|| bad(format!("unknown eliminated variable `{elim}`")))?;
                let poly = CommPoly::parse(&rel, &names).map_err(|e| bad(format!("relation: {e}")))?;
                Some(QuotientPresentation::new(poly, v)?)
            }
        };
        let base = BaseRing::new(names.clone(), quotient)?;
        let poly = |src: &str, what: &str| base.parse(src).map_err(|e| bad(format!("{what}: {e}")));

        let lie_t = section("lie")?;
        let gens = strings(lie_t.get("generators"), "generators")?;
        let n = gens.len();
        let mut lie = LiePresentation::new(gens.clone());
        let gen_index = |s: &str| -> Result<usize> {
            let k: usize = s.parse().map_err(|_| bad(format!("bad generator index `{s}`")))?;
            if k == 0 || k > n {
                return Err(bad(format!("generator index {k} out of range")));
            }
            Ok(k - 1)
        };
        if let Some(al) = lie_t.get("aliases") {
            let al = al.as_table().ok_or_else(|| bad("`aliases` must be a table".into()))?;
            for (alias, target) in al {
                let target = string(target, "aliases")?;
                let g = gens
                    .iter()
                    .position(|x| *x == target)
                    .ok_or_else(|| bad(format!("alias target `{target}` is not a generator")))?;
                lie = lie.with_alias(alias, g);
            }
        }
        let pairs = |key: &str| -> Result<Vec<(usize, usize, &Value)>> {
            let mut out = Vec::new();
            if let Some(t) = lie_t.get(key) {
                let t = t.as_table().ok_or_else(|| bad(format!("`{key}` must be a table")))?;
                for (i, inner) in t {
                    let inner = inner.as_table().ok_or_else(|| bad(format!("`{key}.{i}` must be a table")))?;
                    for (j, v) in inner {
                        let (i, j) = (gen_index(i)?, gen_index(j)?);
                        if i >= j {
                            return Err(bad(format!("`{key}.{}.{}` needs i < j", i + 1, j + 1)));
                        }
                        out.push((i, j, v));
                    }
                }
            }
            Ok(out)
        };
        for (i, j, v) in pairs("bracket")? {
            let arr = v.as_array().ok_or_else(|| bad("bracket value must be an array".into()))?;
            let mut comb = Vec::new();
            for item in arr {
                let pair = item.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("bracket entries are [k, c]".into()))?;
                let k = pair[0].as_integer().ok_or_else(|| bad("bracket index must be an integer".into()))?;
                let k = gen_index(&k.to_string())?;
                let c = match &pair[1] {
                    Value::Integer(c) => Rational::from_integer((*c).into()),
                    Value::String(s) => {
                        let p = CommPoly::parse(s, &[]).map_err(|e| bad(format!("bracket coefficient: {e}")))?;
                        p.as_constant().ok_or_else(|| bad("bracket coefficient must be a number".into()))?
                    }
                    _ => return Err(bad("bracket coefficient must be an integer or a string".into())),
                };
                comb.push((k, c));
            }
            lie = lie.with_bracket(i, j, comb);
        }
        for (i, j, v) in pairs("cocycle")? {
            let src = string(v, "cocycle")?;
            lie = lie.with_cocycle(i, j, poly(&src, "cocycle")?);
        }

        let mut derivations = vec![DerivationSpec::zero(names.len()); n];
        let action_t = section("action")?;
        if let Some(delta) = action_t.get("delta") {
            let delta = delta.as_table().ok_or_else(|| bad("`delta` must be a table".into()))?;
            for (g, per_var) in delta {
                let gi = lie.generator_index(g).ok_or_else(|| bad(format!("unknown generator `{g}`")))?;
                let per_var = per_var.as_table().ok_or_else(|| bad(format!("`delta.{g}` must be a table")))?;
                let mut images = derivations[gi].images().to_vec();
                for (var, img) in per_var {
                    let vi = names
                        .iter()
                        .position(|x| x == var)
                        .ok_or_else(|| bad(format!("unknown variable `{var}`")))?;
                    images[vi] = poly(&string(img, "delta")?, "delta")?;
                }
                derivations[gi] = DerivationSpec::new(images)?;
            }
        }
        AlgebraPresentation::new(base, lie, derivations)
    }

    /// A preset name or a path to a presentation file.
    pub fn load(spec: &str) -> Result<Self> {
        if let Some(p) = preset(spec) {
            return p;
        }
        let text = std::fs::read_to_string(spec)?;
        Ok(Self::parse_text(&text)?.with_source(spec))
    }
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Built-in presentations:
///
/// * `weyl`: `ℚ[x][g1; d/dx]`, with `d` as an alias of `g1`
/// * `weyl-ext-abelian`: abelian `g1, g2` over `ℚ[x]`, `δ₁ = d/dx`, `δ₂ = 0`
/// * `heisenberg`: `[g1, g2] = g3` over `ℚ`
/// * `heisenberg-ext`: the same Lie algebra over `ℚ[x]` with `δ₁ = d/dx`
/// * `sphere:<n>`: `ℚ[x1..xn]/(Σxᵢ² − 1)` without generators
/// * `poly:<v1,v2,..>`: commutative polynomial ring without generators
pub fn preset(name: &str) -> Option<Result<AlgebraPresentation>> {
    let x = || BaseRing::polynomial(names(&["x"]));
    let ddx = || DerivationSpec::partial(1, 0);
    let built = match name {
        "weyl" => AlgebraPresentation::new(x(), LiePresentation::abelian(1).with_alias("d", 0), vec![ddx()]),
        "weyl-ext-abelian" => AlgebraPresentation::new(
            x(),
            LiePresentation::abelian(2).with_alias("d", 0),
            vec![ddx(), DerivationSpec::zero(1)],
        ),
        "heisenberg" => AlgebraPresentation::new(
            BaseRing::polynomial(Vec::new()),
            LiePresentation::abelian(3).with_bracket(0, 1, vec![(2, Rational::one())]),
            vec![DerivationSpec::zero(0); 3],
        ),
        "heisenberg-ext" => AlgebraPresentation::new(
            x(),
            LiePresentation::abelian(3)
                .with_alias("d", 0)
                .with_bracket(0, 1, vec![(2, Rational::one())]),
            vec![ddx(), DerivationSpec::zero(1), DerivationSpec::zero(1)],
        ),
        _ => {
            if let Some(n) = name.strip_prefix("sphere:") {
                let Some(n) = n.parse::<usize>().ok().filter(|&n| n >= 1) else {
                    return Some(Err(Error::InvalidPresentation(format!("bad sphere size in `{name}`"))));
                };
                sphere_presentation(n)
            } else {
                let vars = name.strip_prefix("poly:")?;
                let vars: Vec<String> = vars.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
                AlgebraPresentation::new(BaseRing::polynomial(vars), LiePresentation::abelian(0), Vec::new())
            }
        }
    };
    Some(built.map(|p| p.with_source(name)))
}

/// `ℚ[x1..xn]/(x1² + … + xn² − 1)`, eliminating `xn`.
pub fn sphere_presentation(n: usize) -> Result<AlgebraPresentation> {
    let nm = default_names("x", n);
    let mut rel = CommPoly::constant(n, -Rational::one());
    for i in 0..n {
        rel = &rel + &CommPoly::var(n, i).pow(2);
    }
    let base = BaseRing::new(nm, Some(QuotientPresentation::new(rel, n - 1)?))?;
    AlgebraPresentation::new(base, LiePresentation::abelian(0), Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_roundtrip_preserves_hash() {
        for name in ["weyl", "weyl-ext-abelian", "heisenberg", "heisenberg-ext", "sphere:3", "poly:x,y"] {
            let p = AlgebraPresentation::load(name).unwrap();
            let again = AlgebraPresentation::parse_text(&p.canonical_text()).unwrap();
            assert_eq!(again.canonical_text(), p.canonical_text(), "{name}");
            assert_eq!(again.content_hash(), p.content_hash());
        }
    }

    #[test]
    fn parses_documented_example() {
        let text = r#"
[base]
variables = ["x"]

[lie]
generators = ["g1", "g2", "g3"]
aliases = { d = "g1" }
bracket.1.2 = [[3, 1]]
cocycle.2.3 = "x^2"

[action]
delta.g1.x = "1"
"#;
        let p = AlgebraPresentation::parse_text(text).unwrap();
        assert_eq!(p.ngens(), 3);
        assert_eq!(p.lie().bracket_vector(1, 0), vec![Rational::zero(), Rational::zero(), -Rational::one()]);
        assert_eq!(p.lie().generator_index("d"), Some(0));
        assert!(p.lie().cocycle(1, 2).is_some());
        assert_eq!(p.derivations()[0].images()[0], CommPoly::one(1));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(AlgebraPresentation::parse_text("[lie]\ngenerators = [\"g1\"]\nbracket.1.1 = [[1, 1]]\n").is_err());
        assert!(AlgebraPresentation::parse_text("[lie]\ngenerators = [\"g1\"]\nbracket.1.2 = [[1, 1]]\n").is_err());
        assert!(AlgebraPresentation::parse_text("[base]\nvariables = [\"x\"]\nrelation = \"x^2\"\n").is_err());
        assert!(AlgebraPresentation::parse_text("[base]\nvariables = [\"x\", \"x\"]\n").is_err());
        assert!(AlgebraPresentation::parse_text("[action]\ndelta.g1.x = \"1\"\n").is_err());
        assert!(AlgebraPresentation::parse_text("this is not toml").is_err());
        assert!(preset("sphere:x").unwrap().is_err());
        assert!(preset("nope").is_none());
    }

    #[test]
    fn hash_distinguishes_presets() {
        let a = AlgebraPresentation::load("weyl").unwrap().content_hash();
        let b = AlgebraPresentation::load("weyl-ext-abelian").unwrap().content_hash();
        assert_ne!(a, b);
        assert_eq!(a.len(), 64);
    }
}
