use chasekit::dsl::{parse_instance, render_instance};
use chasekit::model::{core, hom_equivalent};

fn main() {
    let instance = parse_instance("R('a','b'), R('a',?n1), R(?n2,?n3), S(?n3)").unwrap();
    let c = core(&instance);
    print!("{}", render_instance(&c));
    println!("{} of {} atoms kept, equivalent: {}", c.len(), instance.len(), hom_equivalent(&c, &instance));
}
