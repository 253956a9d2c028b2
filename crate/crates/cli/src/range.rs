//! Grid specifications: a comma list (`0.3,0.5,2`) or `start:stop:count`
//! for reals, a comma list or inclusive `start:stop` for integers.

/// Nonempty list of reals.
#[derive(Debug, Clone, PartialEq)]
pub struct RealGrid(pub Vec<f64>);

/// Nonempty list of nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntGrid(pub Vec<u32>);

fn real(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

fn int(s: &str) -> Result<u32, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("'{s}' is not a nonnegative integer"))
}

fn list<T>(s: &str, item: fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(item).collect()
}

pub fn parse_real_grid(s: &str) -> Result<RealGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let values = match parts.as_slice() {
        [_] => list(s, real)?,
        [start, stop, count] => {
            let (start, stop, count) = (real(start)?, real(stop)?, int(count)?);
            match count {
                0 => Vec::new(),
                1 => vec![start],
                _ => {
                    let step = (stop - start) / f64::from(count - 1);
                    let mut v: Vec<f64> = (0..count).map(|i| start + f64::from(i) * step).collect();
                    v[count as usize - 1] = stop;
                    v
                }
            }
        }
        _ => return Err(format!("'{s}' is neither a list nor start:stop:count")),
    };
    if values.is_empty() {
        return Err(format!("range '{s}' is empty"));
    }
    Ok(RealGrid(values))
}

pub fn parse_int_grid(s: &str) -> Result<IntGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let values = match parts.as_slice() {
        [_] => list(s, int)?,
        [start, stop] => (int(start)?..=int(stop)?).collect(),
        _ => return Err(format!("'{s}' is neither a list nor start:stop")),
    };
    if values.is_empty() {
        return Err(format!("range '{s}' is empty"));
    }
    Ok(IntGrid(values))
}
