use chasekit::dsl::parse_dependencies;
use chasekit::rewrite::{egds_to_tgds, enrich, semi_enrich, skolemize, Flavor};

fn main() {
    let sigma = parse_dependencies("R(x,y) -> T(y,x); T(x,y) -> x = y").unwrap();
    print!("{}", egds_to_tgds(&sigma).unwrap().render());

    let tgds = parse_dependencies("R(x,y) -> exists z,w . S(x,z,w)").unwrap();
    print!("{}", enrich(&tgds).unwrap().render());
    print!("{}", semi_enrich(&tgds).unwrap().render());
    for flavor in [Flavor::Oblivious, Flavor::SemiOblivious] {
        for rule in skolemize(&tgds, flavor).unwrap() {
            println!("{rule}");
        }
    }
}
