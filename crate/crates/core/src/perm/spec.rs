use std::path::Path;

use serde::{Deserialize, Serialize};

use super::constructions::{
    alternating_group, cyclic_group, dihedral_group, elementary_abelian_group, h4_sylow,
    quaternion_group, sylow_alternating, sylow_symmetric, symmetric_group, trivial_group,
};
use super::{FiniteGroup, Permutation};
use crate::error::{Error, Result};

/// On-disk generator list: `{"degree": k, "generators": [[images…], …]}` with 1-based images.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GeneratorFile {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl GeneratorFile {
    pub fn into_group(self, label: impl Into<String>, cap: u128) -> Result<FiniteGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| {
                if g.len() != self.degree {
                    return Err(Error::Parse(format!(
                        "generator has {} images but degree is {}",
                        g.len(),
                        self.degree
                    )));
                }
                Permutation::from_images_one_based(g)
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::generated(label, self.degree, gens, cap)
    }
}

fn number(kind: &str, arg: &str) -> Result<usize> {
    arg.parse()
        .map_err(|_| Error::Parse(format!("{kind}: expected a nonnegative integer, got {arg:?}")))
}

/// Parses the group-spec mini-language:
/// `sym:N`, `alt:N`, `sylow-sym:N`, `sylow-alt:N`, `dihedral:2N`, `h4-sylow`,
/// `gens:<path>`, plus `cyclic:N`, `elem:K`, `q8` and `trivial`.
pub fn parse_group_spec(spec: &str, cap: u128) -> Result<FiniteGroup> {
    let spec = spec.trim();
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let mut group = match (kind, arg) {
        ("h4-sylow", "") => h4_sylow(),
        ("q8", "") => quaternion_group(cap)?,
        ("trivial", "") => trivial_group(1),
        ("sym", a) => symmetric_group(number(kind, a)?, cap)?,
        ("alt", a) => alternating_group(number(kind, a)?, cap)?,
        ("sylow-sym", a) => sylow_symmetric(number(kind, a)?, cap)?,
        ("sylow-alt", a) => sylow_alternating(number(kind, a)?, cap)?,
        ("dihedral", a) => dihedral_group(number(kind, a)?, cap)?,
        ("cyclic", a) => cyclic_group(number(kind, a)?, cap)?,
        ("elem", a) => elementary_abelian_group(number(kind, a)?, cap)?,
        ("gens", path) if !path.is_empty() => {
            let text = std::fs::read_to_string(Path::new(path)).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            let file: GeneratorFile =
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            file.into_group(spec, cap)?
        }
        _ => return Err(Error::Parse(format!("unknown group spec {spec:?}"))),
    };
    if group.order() > cap {
        return Err(Error::cap(format!("order {} of {spec}", group.order()), cap));
    }
    group.set_label(spec);
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::DEFAULT_MAX_ORDER;

    #[test]
    fn parses_known_specs() {
        for (spec, order) in [
            ("sylow-sym:8", 128),
            ("sylow-alt:4", 4),
            ("dihedral:6", 6),
            ("h4-sylow", 64),
            ("sym:5", 120),
            ("alt:5", 60),
            ("cyclic:4", 4),
            ("elem:3", 8),
            ("q8", 8),
        ] {
            assert_eq!(parse_group_spec(spec, DEFAULT_MAX_ORDER).unwrap().order(), order, "{spec}");
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_group_spec("sylow-sym:x", DEFAULT_MAX_ORDER), Err(Error::Parse(_))));
        assert!(matches!(parse_group_spec("foo", DEFAULT_MAX_ORDER), Err(Error::Parse(_))));
        assert!(matches!(parse_group_spec("dihedral:7", DEFAULT_MAX_ORDER), Err(Error::Unsupported(_))));
        assert!(matches!(parse_group_spec("h4-sylow", 32), Err(Error::ResourceCap { .. })));
    }
}
