use chasekit::chase::{explore_branches, ChaseStatus, Variant};
use chasekit::dsl::{parse_dependencies, parse_instance};

fn main() {
    let sigma = parse_dependencies("S(x,y) -> exists z . S(y,z); R(x) -> S(x,x)").unwrap();
    let instance = parse_instance("S('a','b'), R('b')").unwrap();

    let report = explore_branches(&instance, &sigma, Variant::Std, 12, 16);
    for (k, b) in report.branches.iter().enumerate() {
        let first = b.choices.first().map(|t| t.dep + 1).unwrap_or(0);
        println!("branch {}: {} after {} steps, first fired dependency {first}", k + 1, b.status, b.steps);
    }
    println!(
        "terminated {}, fuel exhausted {}, truncated {}",
        report.count(ChaseStatus::Terminated),
        report.count(ChaseStatus::FuelExhausted),
        report.truncated
    );
}
