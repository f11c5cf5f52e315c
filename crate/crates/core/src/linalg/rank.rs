use super::QVector;
use crate::scalar::Real;

/// Rank of a family of vectors over the right quaternionic space.
///
/// Modified Gram-Schmidt with norm pivoting; a candidate counts when its
/// residual norm exceeds `rel_tol` times the largest input norm.
pub fn numerical_rank<T: Real>(vectors: &[QVector<T>], rel_tol: T) -> usize {
    let mut work: Vec<QVector<T>> = vectors.to_vec();
    let scale = work.iter().map(|v| v.norm()).fold(T::zero(), T::max);
    if scale == T::zero() {
        return 0;
    }
    let dim = work.first().map_or(0, |v| v.dim());
    let mut rank = 0;
    while !work.is_empty() && rank < dim {
        let (idx, best) =
            work.iter()
                .enumerate()
                .map(|(i, v)| (i, v.norm()))
                .fold((0, -T::one()), |b, c| if c.1 > b.1 { c } else { b });
        if best <= rel_tol * scale {
            break;
        }
        let u = work.swap_remove(idx).right_scale(crate::quat::Quaternion::from_real(best.recip()));
        for _ in 0..2 {
            for w in work.iter_mut() {
                let c = u.inner(w).expect("equal dimensions");
                *w = w.sub(&u.right_scale(c)).expect("equal dimensions");
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::Quaternion;

    type Q = Quaternion<f64>;

    #[test]
    fn quaternion_multiples_are_dependent() {
        let a = QVector::new(vec![Q::new(1.0, 0.0, 2.0, 0.0), Q::new(0.0, 1.0, 0.0, -1.0), Q::k()]);
        let b = a.right_scale(Q::new(0.2, -0.5, 0.1, 0.9));
        let c = QVector::new(vec![Q::i(), Q::from_real(0.0), Q::j()]);
        assert_eq!(numerical_rank(&[a.clone(), b.clone()], 1e-12), 1);
        assert_eq!(numerical_rank(&[a, b, c], 1e-12), 2);
        assert_eq!(numerical_rank::<f64>(&[QVector::zeros(3)], 1e-12), 0);
    }

    #[test]
    fn left_multiples_are_generally_independent() {
        let a = QVector::new(vec![Q::from_real(1.0), Q::j()]);
        let b = a.left_scale(Q::k());
        assert_eq!(numerical_rank(&[a, b], 1e-12), 2);
    }
}
