//! Text specifications of groups, as accepted on the command line:
//!
//! ```text
//! cyclic:12   abelian:2,4   heisenberg:p=3,k=1   dihedral:8
//! quaternion:8   modular:16   product:(A)x(B)
//! semidirect:file=action.json   cayley:file=table.json
//! ```
//!
//! Cayley files hold `{"order": N, "table": [[...]], "labels": [...]}` with
//! `table[i][j]` the index of `i * j` and element 0 the identity.
//! Semidirect files hold `{"normal": SPEC, "acting": SPEC, "action": [[...]]}`
//! where `action[h][a]` is the image of `a` under the automorphism of `h`.

use std::fmt;
use std::path::PathBuf;

use serde::Deserialize;

use crate::error::{Error, Result};

use super::{builders, FiniteGroup, Semidirect};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Abelian(Vec<usize>),
    Heisenberg { p: u64, k: u32 },
    Dihedral(usize),
    Quaternion,
    Modular,
    Product(Vec<GroupSpec>),
    Semidirect(PathBuf),
    Cayley(PathBuf),
}

#[derive(Deserialize)]
struct CayleyFile {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct SemidirectFile {
    normal: String,
    acting: String,
    action: Vec<Vec<usize>>,
}

fn invalid(spec: &str, reason: impl Into<String>) -> Error {
    Error::InvalidGroupSpec {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

/// Parses a group specification string.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let text = text.trim();
    let (kind, arg) = text
        .split_once(':')
        .ok_or_else(|| invalid(text, "expected `kind:arguments`"))?;
    let arg = arg.trim();
    let num = |s: &str| -> Result<usize> {
        s.trim()
            .parse::<usize>()
            .map_err(|_| invalid(text, format!("`{s}` is not a positive integer")))
    };
    let file = |s: &str| -> Result<PathBuf> {
        s.strip_prefix("file=")
            .map(PathBuf::from)
            .ok_or_else(|| invalid(text, "expected `file=PATH`"))
    };
    match kind.trim() {
        "cyclic" => Ok(GroupSpec::Cyclic(num(arg)?)),
        "abelian" => Ok(GroupSpec::Abelian(
            arg.split(',').map(num).collect::<Result<_>>()?,
        )),
        "heisenberg" => {
            let mut p = None;
            let mut k = 1u32;
            for part in arg.split(',') {
                match part.trim().split_once('=') {
                    Some(("p", v)) => p = Some(num(v)? as u64),
                    Some(("k", v)) => k = num(v)? as u32,
                    _ => return Err(invalid(text, format!("unknown parameter `{part}`"))),
                }
            }
            let p = p.ok_or_else(|| invalid(text, "missing p"))?;
            Ok(GroupSpec::Heisenberg { p, k })
        }
        "dihedral" => Ok(GroupSpec::Dihedral(num(arg)?)),
        "quaternion" => match num(arg)? {
            8 => Ok(GroupSpec::Quaternion),
            _ => Err(invalid(text, "only quaternion:8 is available")),
        },
        "modular" => match num(arg)? {
            16 => Ok(GroupSpec::Modular),
            _ => Err(invalid(text, "only modular:16 is available")),
        },
        "product" => Ok(GroupSpec::Product(
            split_factors(text, arg)?
                .into_iter()
                .map(parse_group_spec)
                .collect::<Result<_>>()?,
        )),
        "semidirect" => Ok(GroupSpec::Semidirect(file(arg)?)),
        "cayley" => Ok(GroupSpec::Cayley(file(arg)?)),
        other => Err(invalid(text, format!("unknown group kind `{other}`"))),
    }
}

/// Splits `(A)x(B)x(C)` into `A`, `B`, `C`, respecting nesting.
fn split_factors<'a>(spec: &str, arg: &'a str) -> Result<Vec<&'a str>> {
    let bytes = arg.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    loop {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if bytes.get(i) != Some(&b'(') {
            return Err(invalid(spec, "expected `(` starting a factor"));
        }
        let start = i + 1;
        let mut depth = 0;
        let mut end = None;
        for (j, &c) in bytes.iter().enumerate().skip(i) {
            match c {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        end = Some(j);
                        break;
                    }
                }
                _ => {}
            }
        }
        let end = end.ok_or_else(|| invalid(spec, "unbalanced parentheses"))?;
        out.push(&arg[start..end]);
        i = end + 1;
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        match bytes.get(i) {
            None => break,
            Some(b'x') => i += 1,
            Some(_) => return Err(invalid(spec, "expected `x` between factors")),
        }
    }
    if out.len() < 2 {
        return Err(invalid(spec, "a product needs at least two factors"));
    }
    Ok(out)
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic(k) => builders::cyclic(*k),
            GroupSpec::Abelian(ks) => builders::abelian(ks),
            GroupSpec::Heisenberg { p, k } => builders::heisenberg(*p, *k),
            GroupSpec::Dihedral(n) => builders::dihedral(*n),
            GroupSpec::Quaternion => builders::quaternion8(),
            GroupSpec::Modular => builders::modular16(),
            GroupSpec::Product(parts) => {
                let mut it = parts.iter();
                let mut g = it.next().expect("at least two factors").build()?;
                for part in it {
                    g = builders::direct_product(&g, &part.build()?)?;
                }
                Ok(g)
            }
            GroupSpec::Semidirect(_) => Ok(self.build_semidirect()?.group),
            GroupSpec::Cayley(path) => {
                let text = std::fs::read_to_string(path)?;
                let file: CayleyFile = serde_json::from_str(&text)?;
                if file.table.len() != file.order {
                    return Err(Error::InvalidTable(format!(
                        "order {} but {} rows",
                        file.order,
                        file.table.len()
                    )));
                }
                FiniteGroup::from_table(file.table, file.labels)
            }
        }
    }

    /// The factors and action behind a `semidirect:` spec.
    pub fn build_semidirect(&self) -> Result<Semidirect> {
        match self {
            GroupSpec::Semidirect(path) => {
                let text = std::fs::read_to_string(path)?;
                let file: SemidirectFile = serde_json::from_str(&text)?;
                let normal = parse_group_spec(&file.normal)?.build()?;
                let acting = parse_group_spec(&file.acting)?.build()?;
                builders::semidirect_product(&normal, &acting, file.action)
            }
            other => Err(invalid(&other.to_string(), "not a semidirect specification")),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(k) => write!(f, "cyclic:{k}"),
            GroupSpec::Abelian(ks) => {
                let parts: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
                write!(f, "abelian:{}", parts.join(","))
            }
            GroupSpec::Heisenberg { p, k } => write!(f, "heisenberg:p={p},k={k}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Quaternion => write!(f, "quaternion:8"),
            GroupSpec::Modular => write!(f, "modular:16"),
            GroupSpec::Product(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| format!("({p})")).collect();
                write!(f, "product:{}", parts.join("x"))
            }
            GroupSpec::Semidirect(p) => write!(f, "semidirect:file={}", p.display()),
            GroupSpec::Cayley(p) => write!(f, "cayley:file={}", p.display()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        assert_eq!(parse_group_spec("cyclic:12").unwrap(), GroupSpec::Cyclic(12));
        assert_eq!(parse_group_spec("abelian:2,4").unwrap(), GroupSpec::Abelian(vec![2, 4]));
        assert_eq!(
            parse_group_spec("heisenberg:p=3,k=1").unwrap(),
            GroupSpec::Heisenberg { p: 3, k: 1 }
        );
        assert_eq!(
            parse_group_spec("heisenberg:p=5").unwrap(),
            GroupSpec::Heisenberg { p: 5, k: 1 }
        );
        assert_eq!(parse_group_spec("dihedral:8").unwrap(), GroupSpec::Dihedral(8));
        assert_eq!(parse_group_spec("quaternion:8").unwrap(), GroupSpec::Quaternion);
        assert_eq!(parse_group_spec("modular:16").unwrap(), GroupSpec::Modular);
        assert_eq!(
            parse_group_spec("cayley:file=t.json").unwrap(),
            GroupSpec::Cayley("t.json".into())
        );
    }

    #[test]
    fn nested_products() {
        let s = parse_group_spec("product:(dihedral:8)x(product:(cyclic:3)x(cyclic:3))").unwrap();
        assert_eq!(s.build().unwrap().order(), 72);
        assert_eq!(parse_group_spec(&s.to_string()).unwrap(), s);
        assert_eq!(
            parse_group_spec("product:(dihedral:8)x(cyclic:3)").unwrap().build().unwrap().order(),
            24
        );
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "cyclic",
            "cyclic:x",
            "quaternion:16",
            "product:(cyclic:2)",
            "product:(cyclic:2)y(cyclic:3)",
            "product:(cyclic:2",
            "heisenberg:k=2",
            "torus:3",
            "cayley:t.json",
        ] {
            assert!(parse_group_spec(bad).is_err(), "{bad}");
        }
    }
}
