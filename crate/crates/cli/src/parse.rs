//! Flag value parsers. Complex numbers are "re,im"; grids are "start:stop:count".

use hyperfns::C64;

pub fn complex(s: &str) -> Result<C64, String> {
    let s = s.trim();
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (re, im),
        None => (s, "0"),
    };
    let re: f64 = re.trim().parse().map_err(|_| format!("bad real part in {s:?}"))?;
    let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part in {s:?}"))?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(format!("non-finite value {s:?}"));
    }
    Ok(C64::new(re, im))
}

/// Parsed grid. A newtype so that clap treats it as one value.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

/// Parsed complex list, one value for clap.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexList(pub Vec<C64>);

pub fn grid(s: &str) -> Result<Grid, String> {
    grid_points(s).map(Grid)
}

pub fn complex_list(s: &str) -> Result<ComplexList, String> {
    s.split(';').map(complex).collect::<Result<_, _>>().map(ComplexList)
}

/// "start:stop:count" with count ≥ 1 points including both ends, or a single number.
pub fn grid_points(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |x: &str| x.trim().parse::<f64>().map_err(|_| format!("bad number {x:?} in {s:?}"));
    match parts.as_slice() {
        [x] => Ok(vec![num(x)?]),
        [a, b, n] => {
            let (a, b) = (num(a)?, num(b)?);
            let n: usize = n.trim().parse().map_err(|_| format!("bad count in {s:?}"))?;
            if n == 0 {
                return Err(format!("grid {s:?} needs at least one point"));
            }
            if n == 1 {
                return Ok(vec![a]);
            }
            Ok((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect())
        }
        _ => Err(format!("expected start:stop:count, got {s:?}")),
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(complex("1,0.5").unwrap(), C64::new(1.0, 0.5));
        assert_eq!(complex("-2").unwrap(), C64::new(-2.0, 0.0));
        assert!(complex("1,x").is_err());
        assert!(complex("nan,0").is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(grid("0:4:5").unwrap().0, vec![0.0, 1.0, 2.0, 3.0, 4.0]);
        assert_eq!(grid("1.5").unwrap().0, vec![1.5]);
        assert!(grid("0:1:0").is_err());
        assert!(grid("0:1").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(complex_list("1,0;2,-1").unwrap().0, vec![C64::new(1.0, 0.0), C64::new(2.0, -1.0)]);
    }
}
