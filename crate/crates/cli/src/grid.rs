use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Sample points given as `a`, `a,b,c` or `start:stop:count` (inclusive).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridRepr", into = "Vec<f64>")]
pub struct Grid(pub Vec<f64>);

#[derive(Deserialize)]
#[serde(untagged)]
enum GridRepr {
    Text(String),
    Values(Vec<f64>),
    One(f64),
}

impl TryFrom<GridRepr> for Grid {
    type Error = String;

    fn try_from(r: GridRepr) -> Result<Self, String> {
        match r {
            GridRepr::Text(s) => s.parse(),
            GridRepr::Values(v) => Ok(Grid(v)),
            GridRepr::One(x) => Ok(Grid(vec![x])),
        }
    }
}

impl From<Grid> for Vec<f64> {
    fn from(g: Grid) -> Self {
        g.0
    }
}

pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..count).map(|i| start + (stop - start) * i as f64 / (count - 1) as f64).collect(),
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}"));
        let s = s.trim();
        if s.is_empty() {
            return Ok(Grid(Vec::new()));
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [a, b, n] => {
                let n: usize = n.trim().parse().map_err(|e| format!("bad count {n:?}: {e}"))?;
                Ok(Grid(linspace(num(a)?, num(b)?, n)))
            }
            [_] => s.split(',').map(num).collect::<Result<_, _>>().map(Grid),
            _ => Err(format!("expected `a,b,...` or `start:stop:count`, got {s:?}")),
        }
    }
}
