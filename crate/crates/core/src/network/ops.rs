use super::{Layer, ReluNetwork, SparseAffineLayer};
use crate::error::{check_dim, invalid, Error, Result};

/// Network computing `Σ a_k N_k(x) + c`, built by stacking the first layers,
/// placing second layers block-diagonally and concatenating output rows.
pub fn affine_combine(terms: &[(f64, &ReluNetwork)], c: f64) -> Result<ReluNetwork> {
    let first = terms.first().ok_or_else(|| invalid("affine_combine needs at least one network"))?;
    let d = first.1.input_dim();
    if !c.is_finite() || terms.iter().any(|(a, _)| !a.is_finite()) {
        return Err(Error::NonFinite("combination coefficient".into()));
    }
    let (mut r1, mut b1, mut r2, mut b2, mut w3) = (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut b3 = -c;
    let (mut off1, mut off2) = (0, 0);
    for (a, net) in terms {
        check_dim(d, net.input_dim())?;
        let [l1, l2, l3] = net.layers();
        r1.extend(l1.to_rows());
        b1.extend_from_slice(l1.biases());
        r2.extend(l2.to_rows().into_iter().map(|row| row.into_iter().map(|(j, v)| (j + off1, v)).collect::<Vec<_>>()));
        b2.extend_from_slice(l2.biases());
        w3.extend(l3.row_entries(0).into_iter().map(|(j, v)| (j + off2, a * v)));
        b3 += a * l3.biases()[0];
        off1 += l1.n_out();
        off2 += l2.n_out();
    }
    let l1 = Layer::auto(d, r1, b1)?;
    let l2 = Layer::auto(off1, r2, b2)?;
    let l3 = Layer::Dense(SparseAffineLayer::new(off2, vec![w3], vec![b3])?.to_dense());
    ReluNetwork::new(l1, l2, l3)
}

/// Restrict a network to the affine slice through `fixed` spanned by the
/// coordinate `axes`. The result takes `axes.len()` inputs. First-layer
/// neurons that become constant on the slice are folded into the second-layer
/// biases (one is kept if all of them are constant).
pub fn restrict_to_slice(net: &ReluNetwork, axes: &[usize], fixed: &[f64]) -> Result<ReluNetwork> {
    let d = net.input_dim();
    check_dim(d, fixed.len())?;
    if axes.is_empty() {
        return Err(invalid("slice needs at least one free axis"));
    }
    let mut pos = vec![None; d];
    for (k, &a) in axes.iter().enumerate() {
        if a >= d {
            return Err(invalid(format!("slice axis {a} out of range for dimension {d}")));
        }
        if pos[a].replace(k).is_some() {
            return Err(invalid(format!("slice axis {a} repeated")));
        }
    }
    let [l1, l2, l3] = net.layers();
    let (rows, biases): (Vec<_>, Vec<_>) = (0..l1.n_out())
        .map(|i| {
            let mut row = Vec::new();
            let mut shift = 0.0;
            for (j, v) in l1.row_entries(i) {
                match pos[j] {
                    Some(k) => row.push((k, v)),
                    None => shift += v * fixed[j],
                }
            }
            row.sort_by_key(|e| e.0);
            (row, l1.biases()[i] - shift)
        })
        .unzip();
    let keep: Vec<usize> = match (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect::<Vec<_>>() {
        k if k.is_empty() => vec![0],
        k => k,
    };
    let mut b2: Vec<f64> = l2.biases().to_vec();
    let mut is_kept = vec![false; rows.len()];
    keep.iter().for_each(|&i| is_kept[i] = true);
    for (i, row) in rows.iter().enumerate() {
        let c = (-biases[i]).max(0.0);
        if !is_kept[i] && row.is_empty() && c != 0.0 {
            for (j, b) in b2.iter_mut().enumerate() {
                *b -= l2.entry(j, i) * c;
            }
        }
    }
    let mut new_index = vec![usize::MAX; rows.len()];
    keep.iter().enumerate().for_each(|(k, &i)| new_index[i] = k);
    let l1 = Layer::auto(axes.len(), keep.iter().map(|&i| rows[i].clone()).collect(), keep.iter().map(|&i| biases[i]).collect())?;
    let l2 = l2.remap_columns(keep.len(), &new_index, b2)?;
    ReluNetwork::new(l1, l2, l3.clone())
}
