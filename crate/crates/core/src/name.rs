//! Variable names for the two namespaces and the fresh-name supply.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use core::fmt;

/// A λ-variable (`x`, `y`, ...).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarName(String);

/// A μ-variable (`'a`, `'b`, ...). The stored text carries no quote.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoVarName(String);

impl VarName {
    pub fn new(text: impl Into<String>) -> Self {
        let text = text.into();
        debug_assert!(!text.is_empty(), "empty variable name");
        VarName(text)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl CoVarName {
    pub fn new(text: impl Into<String>) -> Self {
        let text = text.into();
        debug_assert!(!text.is_empty(), "empty covariable name");
        CoVarName(text)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Covariables `'k0`, `'k1`, ... are reserved for the continuation that
    /// the backward translation introduces for every μ̃-binder.
    pub fn is_reserved(&self) -> bool {
        is_reserved_text(&self.0)
    }
}

fn is_reserved_text(text: &str) -> bool {
    let mut chars = text.chars();
    chars.next() == Some('k')
        && !text[1..].is_empty()
        && text[1..].chars().all(|c| c.is_ascii_digit())
}

impl From<&str> for VarName {
    fn from(s: &str) -> Self {
        VarName::new(s)
    }
}

impl From<&str> for CoVarName {
    fn from(s: &str) -> Self {
        CoVarName::new(s.strip_prefix('\'').unwrap_or(s))
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for CoVarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "'{}", self.0)
    }
}

/// A pair of name sets, one per namespace.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NameSet {
    pub vars: BTreeSet<VarName>,
    pub covars: BTreeSet<CoVarName>,
}

impl NameSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn union(mut self, other: &NameSet) -> Self {
        self.extend(other);
        self
    }

    pub fn extend(&mut self, other: &NameSet) {
        self.vars.extend(other.vars.iter().cloned());
        self.covars.extend(other.covars.iter().cloned());
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty() && self.covars.is_empty()
    }

    /// The same set with every reserved covariable removed.
    pub fn without_reserved(mut self) -> Self {
        self.covars.retain(|a| !a.is_reserved());
        self
    }
}

/// Deterministic source of fresh names.
///
/// Names are `base` followed by the value of a single counter that is bumped
/// on every request; candidates already known to the supply are skipped. A
/// supply seeded with every name of a subject never hands out a name that
/// occurs in it, free or bound.
#[derive(Clone, Debug, Default)]
pub struct Fresh {
    vars: BTreeSet<String>,
    covars: BTreeSet<String>,
    counter: u32,
    reserved: u32,
}

impl Fresh {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn avoiding(names: &NameSet) -> Self {
        let mut fresh = Self::new();
        fresh.avoid(names);
        fresh
    }

    pub fn avoid(&mut self, names: &NameSet) {
        self.vars
            .extend(names.vars.iter().map(|x| x.as_str().to_owned()));
        self.covars
            .extend(names.covars.iter().map(|a| a.as_str().to_owned()));
    }

    pub fn var(&mut self, hint: &str) -> VarName {
        let base = match strip_digits(hint) {
            "" | "mu" | "mt" => "v",
            b => b,
        };
        loop {
            let candidate = format!("{}{}", base, self.counter);
            self.counter += 1;
            if self.vars.insert(candidate.clone()) {
                return VarName(candidate);
            }
        }
    }

    /// A fresh covariable outside the reserved `'k<n>` namespace.
    pub fn covar(&mut self, hint: &str) -> CoVarName {
        let base = match strip_digits(hint) {
            "" | "mu" | "mt" => "c",
            "k" => "q",
            b => b,
        };
        loop {
            let candidate = format!("{}{}", base, self.counter);
            self.counter += 1;
            if !is_reserved_text(&candidate) && self.covars.insert(candidate.clone()) {
                return CoVarName(candidate);
            }
        }
    }

    /// A fresh covariable from the reserved namespace.
    pub fn reserved_covar(&mut self) -> CoVarName {
        loop {
            let candidate = format!("k{}", self.reserved);
            self.reserved += 1;
            if self.covars.insert(candidate.clone()) {
                return CoVarName(candidate);
            }
        }
    }
}

fn strip_digits(hint: &str) -> &str {
    hint.trim_end_matches(|c: char| c.is_ascii_digit())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reserved_names() {
        assert!(CoVarName::from("k0").is_reserved());
        assert!(CoVarName::from("'k12").is_reserved());
        assert!(!CoVarName::from("k").is_reserved());
        assert!(!CoVarName::from("ka").is_reserved());
        assert!(!CoVarName::from("a0").is_reserved());
    }

    #[test]
    fn fresh_skips_known_names() {
        let mut names = NameSet::new();
        names.vars.insert("y0".into());
        names.covars.insert("b1".into());
        let mut fresh = Fresh::avoiding(&names);
        assert_eq!(fresh.var("y"), VarName::from("y1"));
        assert_eq!(fresh.covar("b"), CoVarName::from("b2"));
        assert_eq!(fresh.covar("k"), CoVarName::from("q3"));
        assert_eq!(fresh.reserved_covar(), CoVarName::from("k0"));
        assert_eq!(fresh.reserved_covar(), CoVarName::from("k1"));
    }
}
