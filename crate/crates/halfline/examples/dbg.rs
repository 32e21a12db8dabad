use halfline::boundary::BCPair;
use halfline::cayley;
use halfline::complex2::*;
fn main() {
    let tol = TolerancePolicy::default();
    let l = c(0.9, 0.2);
    let bc = BCPair::new(Mat2::diag(l, l), Mat2::identity(), &tol);
    let p = cayley::det_poly(&bc);
    println!("c0={:?} c1={:?} c2={:?}", p.c0, p.c1, p.c2);
    println!("roots_w = {:?}", p.roots_w(&tol));
    println!("roots_k = {:?}", p.roots_k(&tol));
    let report = halfline::spectral::spectrum(&bc, &tol);
    for ev in &report.eigenvalues {
        println!("k = {:?} mult {}", ev.k, ev.multiplicity);
    }
}
