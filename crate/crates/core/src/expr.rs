//! Compact group expressions.
//!
//! ```text
//! spec    := "perm:" PATH | "lattice:" PATH | product
//! product := factor ("x" factor)*
//! factor  := "S" n | "A" n | "C" n | "D" k | "EA" k | "inv(" "C" m ("x" "C" m)* ")"
//! ```
//!
//! `D k` is the dihedral group of order `k`, `EA k` is `(C2)^k`, and
//! `inv(…)` is an odd abelian group extended by its inversion automorphism.
//! Generator files hold one cycle-notation permutation per line, with `#`
//! starting a comment.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::families;
use crate::group::PermGroup;
use crate::lattice::SubgroupClassList;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    Dihedral(usize),
    ElementaryAbelian(usize),
    Inversion(Vec<usize>),
}

impl Factor {
    fn generators(&self) -> Result<Vec<Permutation>> {
        match self {
            Self::Symmetric(n) => families::symmetric_generators(*n),
            Self::Alternating(n) => families::alternating_generators(*n),
            Self::Cyclic(n) => families::cyclic_generators(*n),
            Self::Dihedral(k) => families::dihedral_generators(*k),
            Self::ElementaryAbelian(k) => Ok(families::elementary_abelian_generators(*k)),
            Self::Inversion(orders) => families::semidirect_inversion_generators(orders),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Symmetric(n) => write!(f, "S{n}"),
            Self::Alternating(n) => write!(f, "A{n}"),
            Self::Cyclic(n) => write!(f, "C{n}"),
            Self::Dihedral(k) => write!(f, "D{k}"),
            Self::ElementaryAbelian(k) => write!(f, "EA{k}"),
            Self::Inversion(orders) => {
                let inner: Vec<String> = orders.iter().map(|m| format!("C{m}")).collect();
                write!(f, "inv({})", inner.join("x"))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Product(Vec<Factor>),
    PermFile(PathBuf),
    LatticeFile(PathBuf),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Product(factors) => {
                let parts: Vec<String> = factors.iter().map(Factor::to_string).collect();
                f.write_str(&parts.join("x"))
            }
            Self::PermFile(p) => write!(f, "perm:{}", p.display()),
            Self::LatticeFile(p) => write!(f, "lattice:{}", p.display()),
        }
    }
}

/// A constructed group, with its class list when it came from a lattice file.
pub struct LoadedGroup {
    pub group: Arc<PermGroup>,
    pub classes: Option<SubgroupClassList>,
}

impl LoadedGroup {
    /// The class list, enumerating subgroups unless it was imported.
    pub fn into_classes(self) -> SubgroupClassList {
        match self.classes {
            Some(c) => c,
            None => SubgroupClassList::new(&self.group),
        }
    }
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(parse_error(0, "empty group expression"));
        }
        if let Some(path) = text.strip_prefix("perm:") {
            return Ok(Self::PermFile(PathBuf::from(path)));
        }
        if let Some(path) = text.strip_prefix("lattice:") {
            return Ok(Self::LatticeFile(PathBuf::from(path)));
        }
        let mut parser = Parser {
            bytes: text.as_bytes(),
            pos: 0,
        };
        let factors = parser.product()?;
        Ok(Self::Product(factors))
    }

    pub fn load(&self, order_cap: usize) -> Result<LoadedGroup> {
        match self {
            Self::Product(factors) => {
                let mut gens = factors[0].generators()?;
                for factor in &factors[1..] {
                    gens = families::product_generators(&gens, &factor.generators()?);
                }
                Ok(LoadedGroup {
                    group: Arc::new(PermGroup::with_cap(gens, order_cap)?),
                    classes: None,
                })
            }
            Self::PermFile(path) => Ok(LoadedGroup {
                group: Arc::new(PermGroup::with_cap(read_generator_file(path)?, order_cap)?),
                classes: None,
            }),
            Self::LatticeFile(path) => {
                let text = std::fs::read_to_string(path)?;
                let classes = SubgroupClassList::from_json(&text, order_cap)?;
                Ok(LoadedGroup {
                    group: Arc::clone(classes.group()),
                    classes: Some(classes),
                })
            }
        }
    }
}

/// Parses a generator file: one permutation per line, `#` comments, blank
/// lines ignored. All permutations are padded to the largest point used.
pub fn parse_generator_lines(text: &str) -> Result<Vec<Permutation>> {
    let mut perms = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let p = Permutation::parse(line, None).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse {
                pos,
                msg: format!("line {}: {msg}", lineno + 1),
            },
            other => other,
        })?;
        perms.push(p);
    }
    if perms.is_empty() {
        return Err(parse_error(0, "generator file has no permutations"));
    }
    let degree = perms.iter().map(Permutation::degree).max().unwrap_or(1);
    Ok(perms.into_iter().map(|p| p.extended(degree)).collect())
}

pub fn read_generator_file(path: &Path) -> Result<Vec<Permutation>> {
    parse_generator_lines(&std::fs::read_to_string(path)?)
}

fn parse_error(pos: usize, msg: &str) -> Error {
    Error::Parse {
        pos,
        msg: msg.to_string(),
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn product(&mut self) -> Result<Vec<Factor>> {
        let mut factors = vec![self.factor()?];
        while self.pos < self.bytes.len() {
            self.expect(b'x')?;
            factors.push(self.factor()?);
        }
        Ok(factors)
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.bytes[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.bytes.get(self.pos) == Some(&byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(parse_error(
                self.pos,
                &format!("expected '{}'", byte as char),
            ))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(parse_error(start, "expected a number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| parse_error(start, "number out of range"))
    }

    fn factor(&mut self) -> Result<Factor> {
        let start = self.pos;
        if self.eat("inv(") {
            let mut orders = Vec::new();
            loop {
                self.expect(b'C')?;
                let at = self.pos;
                let m = self.number()?;
                if m % 2 == 0 || m < 3 {
                    return Err(parse_error(
                        at,
                        &format!("inversion factor C{m} must have odd order >= 3"),
                    ));
                }
                orders.push(m);
                if self.eat(")") {
                    break;
                }
                self.expect(b'x')?;
            }
            return Ok(Factor::Inversion(orders));
        }
        let factor = if self.eat("EA") {
            Factor::ElementaryAbelian(self.number()?)
        } else if self.eat("S") {
            Factor::Symmetric(self.number()?)
        } else if self.eat("A") {
            Factor::Alternating(self.number()?)
        } else if self.eat("C") {
            Factor::Cyclic(self.number()?)
        } else if self.eat("D") {
            Factor::Dihedral(self.number()?)
        } else {
            return Err(parse_error(start, "expected S, A, C, D, EA or inv("));
        };
        let invalid = match factor {
            Factor::Symmetric(0) | Factor::Alternating(0) | Factor::Cyclic(0) => true,
            Factor::Dihedral(k) => k < 2 || k % 2 != 0,
            _ => false,
        };
        if invalid {
            return Err(parse_error(
                start,
                &format!("invalid parameter in {factor}"),
            ));
        }
        Ok(factor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_families_and_products() {
        assert_eq!(
            GroupSpec::parse("S5").unwrap(),
            GroupSpec::Product(vec![Factor::Symmetric(5)])
        );
        assert_eq!(
            GroupSpec::parse("C2xC4").unwrap(),
            GroupSpec::Product(vec![Factor::Cyclic(2), Factor::Cyclic(4)])
        );
        assert_eq!(
            GroupSpec::parse("EA3xD8").unwrap(),
            GroupSpec::Product(vec![Factor::ElementaryAbelian(3), Factor::Dihedral(8)])
        );
        assert_eq!(
            GroupSpec::parse("inv(C3xC5)").unwrap(),
            GroupSpec::Product(vec![Factor::Inversion(vec![3, 5])])
        );
        assert_eq!(
            GroupSpec::parse("perm:gens.txt").unwrap(),
            GroupSpec::PermFile("gens.txt".into())
        );
    }

    #[test]
    fn display_round_trips() {
        for text in ["S5", "C2xC4", "inv(C3xC5)", "EA2", "D8xA4"] {
            assert_eq!(GroupSpec::parse(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn builds_groups() {
        let g = GroupSpec::parse("inv(C3)")
            .unwrap()
            .load(1000)
            .unwrap()
            .group;
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        let g = GroupSpec::parse("C2xC2xC2")
            .unwrap()
            .load(1000)
            .unwrap()
            .group;
        assert_eq!(g.order(), 8);
        let err = GroupSpec::parse("S6").unwrap().load(100);
        assert!(matches!(err, Err(Error::OrderCapExceeded { cap: 100 })));
    }

    #[test]
    fn reports_errors_with_positions() {
        assert!(matches!(
            GroupSpec::parse("inv(C4)"),
            Err(Error::Parse { pos: 5, .. })
        ));
        assert!(matches!(
            GroupSpec::parse("C3xQ8"),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(matches!(
            GroupSpec::parse("C3x"),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(matches!(
            GroupSpec::parse("S"),
            Err(Error::Parse { pos: 1, .. })
        ));
        assert!(matches!(
            GroupSpec::parse("D7"),
            Err(Error::Parse { pos: 0, .. })
        ));
        assert!(GroupSpec::parse("").is_err());
        assert!(GroupSpec::parse("C3 C5").is_err());
    }

    #[test]
    fn generator_files() {
        let gens =
            parse_generator_lines("# C7 : C3\n(1,2,3,4,5,6,7)\n\n(2,3,5)(4,7,6)  # x -> 2x\n")
                .unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(PermGroup::new(gens).unwrap().order(), 21);
        assert!(parse_generator_lines("# nothing\n").is_err());
        assert!(matches!(
            parse_generator_lines("(1,2)\n(1,2\n"),
            Err(Error::Parse { msg, .. }) if msg.starts_with("line 2")
        ));
    }
}
