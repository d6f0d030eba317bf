//! Parameter value lists from `start:stop:step` ranges, comma lists or single
//! values.

use crate::UsageError;

/// Stop values within this of a generated point are snapped to the exact
/// stop, making ranges inclusive at the top.
const STOP_SNAP: f64 = 1e-12;

/// Parses `start:stop:step`, `v1,v2,...` or a single number.
pub fn parse_values(spec: &str) -> Result<Vec<f64>, UsageError> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(UsageError::new("empty value specification"));
    }
    if spec.contains(':') {
        return parse_range(spec);
    }
    if spec.contains(',') {
        return spec
            .split(',')
            .map(|part| parse_number(part.trim()))
            .collect();
    }
    Ok(vec![parse_number(spec)?])
}

fn parse_number(text: &str) -> Result<f64, UsageError> {
    let value: f64 = text
        .parse()
        .map_err(|_| UsageError::new(format!("cannot parse `{text}` as a number")))?;
    if !value.is_finite() {
        return Err(UsageError::new(format!("non-finite value `{text}`")));
    }
    Ok(value)
}

fn parse_range(spec: &str) -> Result<Vec<f64>, UsageError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(UsageError::new(format!(
            "range must be start:stop:step, got `{spec}`"
        )));
    }
    let start = parse_number(parts[0])?;
    let stop = parse_number(parts[1])?;
    let step = parse_number(parts[2])?;
    if step <= 0.0 {
        return Err(UsageError::new(format!(
            "range step must be > 0, got {step}"
        )));
    }
    if stop < start - STOP_SNAP {
        return Err(UsageError::new(format!(
            "range stop {stop} is below start {start}"
        )));
    }
    let mut values = Vec::new();
    let mut k = 0u64;
    loop {
        let v = start + k as f64 * step;
        if v > stop + STOP_SNAP {
            break;
        }
        values.push(if (v - stop).abs() <= STOP_SNAP {
            stop
        } else {
            v
        });
        k += 1;
        if k > 1_000_000 {
            return Err(UsageError::new("range produces more than 1e6 values"));
        }
    }
    Ok(values)
}
