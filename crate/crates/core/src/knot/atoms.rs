use std::collections::BTreeMap;

/// Named hyperbolic knot-generating links and their component counts.
///
/// A link with `n` components is spliced with `n - 1` children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomRegistry {
    atoms: BTreeMap<String, usize>,
}

impl Default for AtomRegistry {
    /// `F8` (figure-eight knot), `W` (Whitehead link), `B` (Borromean rings).
    /// Any `B(i,j)` is also accepted as a three-component link.
    fn default() -> Self {
        let mut atoms = BTreeMap::new();
        atoms.insert("F8".to_string(), 1);
        atoms.insert("W".to_string(), 2);
        atoms.insert("B".to_string(), 3);
        AtomRegistry { atoms }
    }
}

impl AtomRegistry {
    pub fn empty() -> Self {
        AtomRegistry {
            atoms: BTreeMap::new(),
        }
    }

    pub fn declare(&mut self, name: &str, components: usize) {
        self.atoms.insert(name.to_string(), components);
    }

    /// Component count of `name`, if declared.
    pub fn components(&self, name: &str) -> Option<usize> {
        if let Some(&n) = self.atoms.get(name) {
            return Some(n);
        }
        if is_borromean_family(name) {
            return Some(3);
        }
        None
    }
}

fn is_borromean_family(name: &str) -> bool {
    let Some(inner) = name.strip_prefix("B(").and_then(|s| s.strip_suffix(')')) else {
        return false;
    };
    let mut parts = inner.split(',');
    let ok = |s: Option<&str>| s.is_some_and(|s| s.trim().parse::<i64>().is_ok());
    ok(parts.next()) && ok(parts.next()) && parts.next().is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predeclared() {
        let r = AtomRegistry::default();
        assert_eq!(r.components("F8"), Some(1));
        assert_eq!(r.components("W"), Some(2));
        assert_eq!(r.components("B"), Some(3));
        assert_eq!(r.components("B(2,-3)"), Some(3));
        assert_eq!(r.components("B(2)"), None);
        assert_eq!(r.components("K9"), None);
    }
}
