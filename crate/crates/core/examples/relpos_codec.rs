//! Encodes a dependency tree as relative-PoS labels, decodes it back and
//! shows how a damaged label sequence is repaired.

use relclause::clausegen::templates::gold_tree;
use relclause::typelogic::Reading;
use relclause::udencoding::{decode, encode, extract_reading_ud, uas_las, RelPosLabel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let forms = ["De", "patiënt", "die", "de", "dokter", "geneest"];
    for reading in Reading::ALL {
        let tree = gold_tree(reading, &forms);
        let labels = encode(&tree);
        let printed: Vec<String> = labels.iter().map(ToString::to_string).collect();
        println!("{reading:?}: {}", printed.join(" "));
        let back = decode(&labels, tree.tokens())?;
        assert_eq!(back.tree, tree);
        println!(
            "  decoded with {} repairs, pronoun reads {:?}",
            back.repair_count(),
            extract_reading_ud(&labels, 2)?
        );
    }

    let gold = gold_tree(Reading::SubjRel, &forms);
    let mut labels = encode(&gold);
    labels[4] = RelPosLabel::new(3, "V", "obj");
    labels[5] = RelPosLabel::root();
    let damaged = decode(&labels, gold.tokens())?;
    println!("\ndamaged labels: {} repaired", damaged.repair_count());
    println!("heads {:?}", damaged.tree.heads());
    let (uas, las) = uas_las(&gold, &damaged.tree)?;
    println!("uas {uas:.3} las {las:.3}");
    Ok(())
}
