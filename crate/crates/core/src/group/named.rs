use std::fmt;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// Largest order a named constructor will build.
pub const MAX_NAMED_ORDER: usize = 64;

/// A named group: `cyclic:n`, `quaternion:2^s`, `dihedral:n` (order `2n`),
/// `symmetric:n` (`n <= 4`), or `product:A,B,...` of non-product factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Quaternion(usize),
    Dihedral(usize),
    Symmetric(usize),
    Product(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Cyclic(n) | GroupSpec::Quaternion(n) => *n,
            GroupSpec::Dihedral(n) => 2 * n,
            GroupSpec::Symmetric(n) => (1..=*n).product(),
            GroupSpec::Product(fs) => fs.iter().map(GroupSpec::order).product(),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Quaternion(n) => write!(f, "quaternion:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(ToString::to_string).collect();
                write!(f, "product:{}", parts.join(","))
            }
        }
    }
}

pub fn parse_group_spec(s: &str) -> Result<GroupSpec> {
    let s = s.trim();
    let (name, arg) = s
        .split_once(':')
        .ok_or_else(|| Error::UnknownGroup(format!("{s:?} (expected name:parameter)")))?;
    let number = |a: &str| -> Result<usize> {
        a.trim()
            .parse()
            .map_err(|_| Error::UnknownGroup(format!("{s:?}: bad parameter {a:?}")))
    };
    let spec = match name {
        "cyclic" => GroupSpec::Cyclic(number(arg)?),
        "quaternion" => GroupSpec::Quaternion(number(arg)?),
        "dihedral" => GroupSpec::Dihedral(number(arg)?),
        "symmetric" => GroupSpec::Symmetric(number(arg)?),
        "product" => {
            let factors = arg
                .split(',')
                .map(|f| match parse_group_spec(f)? {
                    GroupSpec::Product(_) => {
                        Err(Error::UnknownGroup(format!("{s:?}: nested product")))
                    }
                    g => Ok(g),
                })
                .collect::<Result<Vec<_>>>()?;
            GroupSpec::Product(factors)
        }
        _ => return Err(Error::UnknownGroup(format!("{s:?}: unknown name {name:?}"))),
    };
    Ok(spec)
}

/// Builds the multiplication table for a named group.
pub fn named_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic(n) if *n == 0 => {
            Err(Error::InvalidArgument("cyclic group of order 0".into()))
        }
        GroupSpec::Quaternion(n) if *n < 4 || !n.is_power_of_two() => Err(Error::InvalidArgument(
            format!("generalized quaternion order must be a power of two >= 4, got {n}"),
        )),
        GroupSpec::Dihedral(n) if *n < 2 => {
            Err(Error::InvalidArgument(format!("dihedral:{n} needs n >= 2")))
        }
        GroupSpec::Symmetric(n) if *n == 0 || *n > 4 => Err(Error::SizeBudget(format!(
            "symmetric:{n} (supported n = 1..=4)"
        ))),
        GroupSpec::Product(fs) if fs.is_empty() => {
            Err(Error::InvalidArgument("empty product".into()))
        }
        _ if spec.order() > MAX_NAMED_ORDER => Err(Error::SizeBudget(format!(
            "{spec} has order {} > {MAX_NAMED_ORDER}",
            spec.order()
        ))),
        GroupSpec::Cyclic(n) => FiniteGroup::new(0, cyclic_table(*n)),
        GroupSpec::Quaternion(n) => FiniteGroup::new(0, metacyclic_table(n / 2, true)),
        GroupSpec::Dihedral(n) => FiniteGroup::new(0, metacyclic_table(*n, false)),
        GroupSpec::Symmetric(n) => symmetric(*n),
        GroupSpec::Product(fs) => {
            let mut acc = named_group(&fs[0])?;
            for f in &fs[1..] {
                acc = direct_product(&acc, &named_group(f)?)?;
            }
            Ok(acc)
        }
    }
}

fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect()
}

/// Elements `a^i b^j` (index `i + n*j`) with `a^n = 1`, `b a b^-1 = a^-1` and
/// `b^2 = a^(n/2)` (quaternion) or `b^2 = 1` (dihedral).
fn metacyclic_table(n: usize, quaternion: bool) -> Vec<Vec<usize>> {
    let b_squared = if quaternion { n / 2 } else { 0 };
    let mut table = vec![vec![0; 2 * n]; 2 * n];
    for x in 0..2 * n {
        let (i, j) = (x % n, x / n);
        for y in 0..2 * n {
            let (k, l) = (y % n, y / n);
            // a^i b^j a^k b^l = a^(i ± k) b^(j + l)
            let mut e = if j == 0 { i + k } else { i + n - k };
            let mut f = j + l;
            if f == 2 {
                e += b_squared;
                f = 0;
            }
            table[x][y] = e % n + n * f;
        }
    }
    table
}

fn symmetric(n: usize) -> Result<FiniteGroup> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    permutations(&mut (0..n).collect(), 0, &mut perms);
    perms.sort();
    let index = |p: &Vec<usize>| perms.binary_search(p).expect("closed under composition");
    let table = perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .map(|t| index(&(0..n).map(|x| s[t[x]]).collect()))
                .collect()
        })
        .collect();
    FiniteGroup::new(0, table)
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

/// `G × H` with element `(g, h)` at index `g * |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let (m, n) = (g.order(), h.order());
    let table = (0..m * n)
        .map(|x| {
            (0..m * n)
                .map(|y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n))
                .collect()
        })
        .collect();
    FiniteGroup::new(g.identity() * n + h.identity(), table)
}
