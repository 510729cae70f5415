//! The subgrid basis polynomials and their difference relations.

use holistic_fd::construct::basis_polynomials;
use holistic_fd::rational::int;
use holistic_fd::{Result, XiOperator};

fn main() -> Result<()> {
    let mut prev = None;
    for k in 1..=5 {
        let (p, q) = basis_polynomials(k)?;
        println!("p_{k}(ξ) = {p}");
        println!("q_{k}(ξ) = {q}");
        if let Some((pp, qp)) = prev {
            assert_eq!(p.apply(XiOperator::SecondDifference), pp);
            assert_eq!(q.apply(XiOperator::SecondDifference), qp);
            assert_eq!(p.apply(XiOperator::MeanDifference), qp);
        }
        let kk = int(k as i64);
        println!(
            "    p_{k}(±{k}) = {}, {}   q_{k}(±{k}) = {}, {}",
            p.eval(&kk),
            p.eval(&-kk.clone()),
            q.eval(&kk),
            q.eval(&-kk.clone())
        );
        prev = Some((p, q));
    }
    Ok(())
}
