use chasekit::chase::Variant;
use chasekit::classes::{critical_instance, uniform_termination_semidecision};
use chasekit::dsl::{parse_dependencies, render_instance};

fn main() {
    let sigma = parse_dependencies("R(x,y) -> exists z . R(x,z)").unwrap();
    print!("{}", render_instance(&critical_instance(&sigma).unwrap()));
    for variant in [Variant::Sobl, Variant::Obl] {
        let verdict = uniform_termination_semidecision(&sigma, variant, 100).unwrap();
        println!("{variant}: {verdict:?}");
    }
}
