//! Built-in groups.
//!
//! The fixed groups are also shipped as JSON documents under `fixtures/`;
//! the parametric families are generated.

use crate::coxeter::{Bond, CoxeterMatrix};
use crate::error::{CoxError, Result};

pub const A2_JSON: &str = include_str!("../fixtures/A2.json");
pub const H3_JSON: &str = include_str!("../fixtures/H3.json");
pub const FIG1_JSON: &str = include_str!("../fixtures/FIG1.json");
pub const FIG2_P4_JSON: &str = include_str!("../fixtures/FIG2_p4.json");

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn from_pairs(name: String, generators: Vec<String>, default: Bond, pairs: &[(usize, usize, Bond)]) -> CoxeterMatrix {
    let n = generators.len();
    let mut m = vec![vec![default; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Bond::Finite(1);
    }
    for &(i, j, b) in pairs {
        m[i][j] = b;
        m[j][i] = b;
    }
    CoxeterMatrix::new(name, generators, m).expect("built-in matrix is valid")
}

pub fn a2() -> CoxeterMatrix {
    dihedral(Bond::Finite(3)).renamed("A2")
}

/// `I2(m)` on generators `s, t`.
pub fn dihedral(m: Bond) -> CoxeterMatrix {
    from_pairs(format!("I2({m})"), vec!["s".into(), "t".into()], m, &[])
}

/// The uniform group `W(m, n)`: `n` generators `s1..sn`, every bond `m`.
pub fn uniform(m: Bond, n: usize) -> CoxeterMatrix {
    from_pairs(format!("W({m},{n})"), names("s", n), m, &[])
}

/// Complete graph on `s1..s4` with every bond 3 except `m(s2, s4) = 4`.
pub fn fig1() -> CoxeterMatrix {
    from_pairs("FIG1".into(), names("s", 4), Bond::Finite(3), &[(1, 3, Bond::Finite(4))])
}

/// Five generators with `m(s4, s5) = p`, infinite bonds on
/// `s1-s4, s2-s4, s1-s5, s2-s5, s2-s3`, and all other pairs commuting.
pub fn fig2(p: Bond) -> CoxeterMatrix {
    let inf = Bond::Infinite;
    from_pairs(
        format!("FIG2({p})"),
        names("s", 5),
        Bond::Finite(2),
        &[(3, 4, p), (0, 3, inf), (1, 3, inf), (0, 4, inf), (1, 4, inf), (1, 2, inf)],
    )
}

/// Triangle group on `r, s, t` with `m_rs = 2`, `m_rt = b`, `m_st = c`.
pub fn triangle_2bc(b: Bond, c: Bond) -> CoxeterMatrix {
    from_pairs(
        format!("T(2,{b},{c})"),
        vec!["r".into(), "s".into(), "t".into()],
        Bond::Finite(2),
        &[(0, 2, b), (1, 2, c)],
    )
}

/// `H3` as the triangle group `(2, 3, 5)` on `r, s, t` with `m_rs = 2`,
/// `m_rt = 5`, `m_st = 3`.
pub fn h3() -> CoxeterMatrix {
    triangle_2bc(Bond::Finite(5), Bond::Finite(3)).renamed("H3")
}

fn parse_bond(tok: &str) -> Result<Bond> {
    let tok = tok.trim();
    if tok.eq_ignore_ascii_case("inf") {
        return Ok(Bond::Infinite);
    }
    let m: u32 = tok
        .parse()
        .map_err(|_| CoxError::Parameter(format!("bad bond label `{tok}`")))?;
    if m < 2 {
        return Err(CoxError::Parameter(format!("bond label {m} must be at least 2")));
    }
    Ok(Bond::Finite(m))
}

fn parse_count(tok: &str) -> Result<usize> {
    match tok.trim().parse() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(CoxError::Parameter(format!("bad generator count `{tok}`"))),
    }
}

/// Looks up a built-in group: `A2`, `H3`, `FIG1`, `FIG2(p)`, `I2(m)`,
/// `W(m,n)` (also `U(m,n)`), `T(2,b,c)`. Bond labels may be `inf`.
pub fn builtin(name: &str) -> Result<CoxeterMatrix> {
    let upper = name.trim().to_ascii_uppercase();
    let (head, args) = match upper.split_once('(') {
        Some((h, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| CoxError::Parameter(format!("bad built-in group `{name}`")))?;
            (h.to_owned(), inner.split(',').map(str::to_owned).collect::<Vec<_>>())
        }
        None => (upper.clone(), Vec::new()),
    };
    let arity = |k: usize| -> Result<()> {
        if args.len() == k {
            Ok(())
        } else {
            Err(CoxError::Parameter(format!("`{name}` takes {k} parameters")))
        }
    };
    match head.as_str() {
        "A2" => arity(0).map(|_| a2()),
        "H3" => arity(0).map(|_| h3()),
        "FIG1" => arity(0).map(|_| fig1()),
        "FIG2" => {
            arity(1)?;
            Ok(fig2(parse_bond(&args[0])?))
        }
        "I2" => {
            arity(1)?;
            Ok(dihedral(parse_bond(&args[0])?))
        }
        "W" | "U" => {
            arity(2)?;
            Ok(uniform(parse_bond(&args[0])?, parse_count(&args[1])?))
        }
        "T" => {
            arity(3)?;
            if parse_bond(&args[0])? != Bond::Finite(2) {
                return Err(CoxError::Parameter("triangle fixtures have the form T(2,b,c)".into()));
            }
            Ok(triangle_2bc(parse_bond(&args[1])?, parse_bond(&args[2])?))
        }
        _ => Err(CoxError::Parameter(format!("unknown built-in group `{name}`"))),
    }
}

impl CoxeterMatrix {
    fn renamed(self, name: &str) -> CoxeterMatrix {
        let m = (0..self.rank())
            .map(|i| (0..self.rank()).map(|j| self.bond(i, j)).collect())
            .collect();
        CoxeterMatrix::new(name, self.generators().to_vec(), m).expect("valid matrix")
    }
}
