use crate::error::{Error, Result};
use crate::exact::BigFloat;
use crate::grid::GridFn;

fn digits(precision: usize) -> usize {
    (precision as f64 * std::f64::consts::LOG10_2).floor() as usize
}

fn write(header: [String; 2], rows: impl Iterator<Item = (usize, String)>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(&header).map_err(io)?;
    for (i, v) in rows {
        w.write_record([i.to_string(), v]).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

/// `x,value` rows; the header names the quantity and the precision.
pub fn grid_csv(quantity: &str, f: &GridFn<BigFloat>, precision: usize) -> Result<String> {
    let d = digits(precision);
    write(
        ["x".into(), format!("{quantity} (precision {precision} bits)")],
        f.values().iter().enumerate().map(|(x, v)| (x, v.to_sci_string(d))),
    )
}

pub fn spectrum_csv(quantity: &str, values: &[BigFloat], precision: usize) -> Result<String> {
    let d = digits(precision);
    write(
        ["index".into(), format!("{quantity} (precision {precision} bits)")],
        values.iter().enumerate().map(|(i, v)| (i, v.to_sci_string(d))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_rows() {
        let f = GridFn::new(vec![BigFloat::from_i64(1, 64), BigFloat::parse("-0.5", 64).unwrap()]);
        let s = grid_csv("phi_D0", &f, 64).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "x,phi_D0 (precision 64 bits)");
        assert_eq!(lines[1], "0,1e0");
        assert_eq!(lines[2], "1,-5e-1");
        let t = spectrum_csv("H_D eigenvalue", &[BigFloat::from_i64(3, 64)], 64).unwrap();
        assert!(t.starts_with("index,H_D eigenvalue (precision 64 bits)\n0,3e0"));
    }
}
