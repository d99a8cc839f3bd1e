use chasekit::classes::{is_ra, is_sd, is_sw, is_swa, is_wa, show_cycle};
use chasekit::dsl::parse_dependencies;

fn main() {
    let sets = [
        "R(x,y) -> exists z . R(x,z)",
        "S(y), R(x,y) -> exists z . R(y,z)",
        "R(x,y,z), S(y) -> exists w . R(y,w,x)",
        "S(x), R(x,y) -> exists z . R(y,z)",
    ];
    for text in sets {
        let sigma = parse_dependencies(text).unwrap();
        println!("{text}");
        let graphs = [("sw", is_sw(&sigma)), ("ra", is_ra(&sigma)), ("wa", is_wa(&sigma)), ("sd", is_sd(&sigma))];
        for (name, verdict) in graphs {
            match verdict.unwrap().witness {
                None => println!("  {name}: yes"),
                Some(cycle) => println!("  {name}: no, {}", show_cycle(&cycle)),
            }
        }
        println!("  swa: {}", if is_swa(&sigma).unwrap().member { "yes" } else { "no" });
    }
}
