use taut::enumerate::enumerate_curves;
use taut::surface::SurfaceSpec;
use taut::Exec;

fn main() {
    let s = SurfaceSpec::new(2).unwrap();
    for cap in [6, 8, 10, 12] {
        let t0 = std::time::Instant::now();
        let curves = enumerate_curves(s, cap, Exec::default(), &|_| true);
        println!("cap {cap}: {} classes in {:?}", curves.len(), t0.elapsed());
    }
}
