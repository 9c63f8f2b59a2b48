use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, invalid, Error, Result};
use crate::geometry::AxisBox;
use crate::network::ReluNetwork;

/// Where a planar field sits inside a higher-dimensional input space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceMeta {
    /// Input coordinates mapped to the field's two axes.
    pub axes: Vec<usize>,
    /// Full input point; entries on `axes` are ignored.
    pub fixed: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct FieldHeader {
    #[serde(rename = "box")]
    bx: AxisBox,
    resolution: Vec<usize>,
    slice: Option<SliceMeta>,
}

/// Cell-centred samples on a tensor grid, first axis fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField {
    pub bx: AxisBox,
    pub resolution: Vec<usize>,
    pub values: Vec<f64>,
    pub slice: Option<SliceMeta>,
}

impl GridField {
    pub fn new(bx: AxisBox, resolution: Vec<usize>, values: Vec<f64>, slice: Option<SliceMeta>) -> Result<Self> {
        check_dim(bx.dim(), resolution.len())?;
        if resolution.contains(&0) {
            return Err(invalid("field resolution must be positive"));
        }
        let count: usize = resolution.iter().product();
        if values.len() != count {
            return Err(invalid(format!("field has {} values, resolution needs {count}", values.len())));
        }
        Ok(Self { bx, resolution, values, slice })
    }

    /// Centre of cell `(i, j)` of a planar field.
    pub fn cell_center(&self, i: usize, j: usize) -> [f64; 2] {
        let c = |k: usize, idx: usize| {
            self.bx.lo[k] + (idx as f64 + 0.5) * (self.bx.hi[k] - self.bx.lo[k]) / self.resolution[k] as f64
        };
        [c(0, i), c(1, j)]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.resolution[0] + i]
    }
}

/// Sample a network on a planar grid. For `d > 2` the grid lies in the slice
/// through `slice.fixed` spanned by `slice.axes`.
pub fn sample_field(net: &ReluNetwork, bx: &AxisBox, res: [usize; 2], slice: Option<SliceMeta>) -> Result<GridField> {
    check_dim(2, bx.dim())?;
    if res.contains(&0) {
        return Err(invalid("field resolution must be positive"));
    }
    let d = net.input_dim();
    let (axes, base) = match &slice {
        Some(s) => {
            check_dim(d, s.fixed.len())?;
            if s.axes.len() != 2 || s.axes.iter().any(|&a| a >= d) || s.axes[0] == s.axes[1] {
                return Err(invalid("slice needs two distinct axes inside the input dimension"));
            }
            (s.axes.clone(), s.fixed.clone())
        }
        None => {
            check_dim(2, d)?;
            (vec![0, 1], vec![0.0; 2])
        }
    };
    let empty = GridField::new(bx.clone(), res.to_vec(), vec![0.0; res[0] * res[1]], slice.clone())?;
    let rows: Vec<Vec<f64>> = (0..res[1])
        .into_par_iter()
        .map(|j| {
            let mut x = base.clone();
            (0..res[0])
                .map(|i| {
                    let c = empty.cell_center(i, j);
                    x[axes[0]] = c[0];
                    x[axes[1]] = c[1];
                    net.eval_point(&x)
                })
                .collect()
        })
        .collect();
    GridField::new(bx.clone(), res.to_vec(), rows.concat(), slice)
}

/// Header line (JSON) followed by one line per row of the first axis.
pub fn field_to_string(field: &GridField) -> Result<String> {
    let header = FieldHeader { bx: field.bx.clone(), resolution: field.resolution.clone(), slice: field.slice.clone() };
    let mut s = super::json::to_json_string(&header)?;
    s.push('\n');
    for row in field.values.chunks(field.resolution[0]) {
        for (k, v) in row.iter().enumerate() {
            if k > 0 {
                s.push(' ');
            }
            write!(s, "{v:.16e}").expect("writing to a string");
        }
        s.push('\n');
    }
    Ok(s)
}

pub fn field_from_str(text: &str) -> Result<GridField> {
    let mut lines = text.lines();
    let header: FieldHeader = serde_json::from_str(lines.next().ok_or_else(|| Error::Format("empty field file".into()))?)
        .map_err(|e| Error::Format(format!("field header: {e}")))?;
    let mut values = Vec::new();
    for (n, line) in lines.enumerate() {
        for tok in line.split_ascii_whitespace() {
            values.push(tok.parse::<f64>().map_err(|e| Error::Format(format!("row {n}: {e}")))?);
        }
    }
    GridField::new(header.bx, header.resolution, values, header.slice).map_err(|e| Error::Format(e.to_string()))
}

pub fn save_field(path: &Path, field: &GridField) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, field_to_string(field)?)?;
    Ok(())
}

pub fn load_field(path: &Path) -> Result<GridField> {
    field_from_str(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bitwise() {
        let vals: Vec<f64> = (0..12).map(|k| (k as f64).sin() / 3.0).collect();
        let f = GridField::new(
            AxisBox::cube(2, -2.0, 2.0).unwrap(),
            vec![4, 3],
            vals,
            Some(SliceMeta { axes: vec![0, 1], fixed: vec![0.0, 0.0, 0.205] }),
        )
        .unwrap();
        let back = field_from_str(&field_to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
        assert!(back.values.iter().zip(&f.values).all(|(a, b)| a.to_bits() == b.to_bits()));
    }

    #[test]
    fn constant_field() {
        let f = GridField::new(AxisBox::unit(2), vec![2, 2], vec![1.0; 4], None).unwrap();
        let s = field_to_string(&f).unwrap();
        assert_eq!(s.lines().count(), 3);
        assert_eq!(field_from_str(&s).unwrap().values, vec![1.0; 4]);
    }

    #[test]
    fn malformed_header() {
        assert!(matches!(field_from_str("not json\n1 2\n"), Err(Error::Format(_))));
        assert!(matches!(field_from_str(""), Err(Error::Format(_))));
        let bad = "{\"box\":{\"lo\":[0,0],\"hi\":[1,1]},\"resolution\":[2,2],\"slice\":null}\n1 2\n3\n";
        assert!(matches!(field_from_str(bad), Err(Error::Format(_))));
    }
}
