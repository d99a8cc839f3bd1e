use chasekit::chase::{run, ChaseConfig, Variant};
use chasekit::srs::{derivation_tree, reduce, word_to_instance, words, ReduceMode, Srs, Word};

fn main() {
    let srs = Srs::from_pairs(&[("1", "0")]).unwrap();
    let word: Word = "1101".parse().unwrap();

    let tree = derivation_tree(&word, &srs, 8, 1000);
    println!("derivation tree: {} nodes, depth {}", tree.nodes.len(), tree.max_depth());

    let sigma = reduce(&srs, ReduceMode::Basic).unwrap();
    print!("{}", sigma.render());

    let out = run(&word_to_instance(&word), &sigma.deps, &ChaseConfig::new(Variant::Core, 200));
    println!("core chase: {} after {} steps", out.status, out.steps);
    let spelled: Vec<String> = words(&out.result).iter().map(Word::to_string).collect();
    println!("words: {}", spelled.join(" "));
}
