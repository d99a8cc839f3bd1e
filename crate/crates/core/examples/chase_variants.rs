use chasekit::chase::{run, ChaseConfig, Variant};
use chasekit::dsl::{parse_dependencies, parse_instance, render_instance};

fn main() {
    let sigma = parse_dependencies("R(x,y) -> exists z . R(x,z)").unwrap();
    let instance = parse_instance("R('a','b')").unwrap();

    // The same input under each variant, with a small step budget.
    for variant in [Variant::Std, Variant::Obl, Variant::Sobl, Variant::Core] {
        let out = run(&instance, &sigma, &ChaseConfig::new(variant, 5));
        println!("{variant}: {} after {} steps", out.status, out.steps);
        print!("{}", render_instance(&out.result));
    }
}
