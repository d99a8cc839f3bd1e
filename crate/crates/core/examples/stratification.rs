use chasekit::dsl::parse_dependencies;
use chasekit::strat::{chase_graph, is_c_stratified, is_ir, is_stratified, precedes_c, GraphOrder};

fn main() {
    let sigma = parse_dependencies(
        "S(x), E(x,y) -> E(y,x)
         S(x), E(x,y) -> exists z . E(y,z), E(z,x)",
    )
    .unwrap();

    if let Some(w) = precedes_c(&sigma[0], &sigma[1]) {
        println!("dependency 1 precedes dependency 2 on {:?}", w.instance);
    }
    for (name, order) in [("str", GraphOrder::Str), ("cstr", GraphOrder::CStr)] {
        let g = chase_graph(&sigma, order).unwrap();
        println!("{name} chase graph edges: {:?}", g.edges);
    }
    println!("str: {}", is_stratified(&sigma).unwrap().member);
    println!("cstr: {}", is_c_stratified(&sigma).unwrap().member);
    println!("ir: {}", is_ir(&sigma).unwrap());
}
