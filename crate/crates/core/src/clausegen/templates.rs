//! Gold analyses of the six-token relative clause `Det N Pron Det N V`.

use crate::typelogic::{Formula, Reading};
use crate::udencoding::{encode, DepTree, PosTag, RelPosLabel, Token};

pub const DETERMINER_SUPERTAG: &str = "box(det, N -> NP)";
pub const NOUN_SUPERTAG: &str = "N";
/// The verb type is shared by both readings.
pub const VERB_SUPERTAG: &str = "dia(obj1, NP) -> dia(su, VNW) -> S";

/// Token position of the relative pronoun in a target phrase.
pub const PRONOUN_INDEX: usize = 2;
pub const TARGET_LEN: usize = 6;

/// Goal type of a relative clause used as a noun phrase.
pub fn goal() -> Formula {
    Formula::atom("NP")
}

pub fn pronoun_supertag(reading: Reading) -> Formula {
    let text = format!(
        "dia(relcl, dia({}, VNW) -> S) -> box(mod, NP -> NP)",
        reading.gap_role()
    );
    parse(&text)
}

fn parse(text: &str) -> Formula {
    Formula::parse_unchecked(text).expect("template formulas are well-formed")
}

pub fn gold_supertags(reading: Reading) -> Vec<Formula> {
    vec![
        parse(DETERMINER_SUPERTAG),
        parse(NOUN_SUPERTAG),
        pronoun_supertag(reading),
        parse(DETERMINER_SUPERTAG),
        parse(NOUN_SUPERTAG),
        parse(VERB_SUPERTAG),
    ]
}

pub fn target_pos_tags() -> Vec<PosTag> {
    ["DET", "N", "PRON", "DET", "N", "V"]
        .into_iter()
        .map(PosTag::new)
        .collect()
}

/// The gold dependency tree over the six target forms.
pub fn gold_tree<S: AsRef<str>>(reading: Reading, forms: &[S]) -> DepTree {
    assert_eq!(
        forms.len(),
        TARGET_LEN,
        "relative clause templates have six tokens"
    );
    let tokens: Vec<Token> = forms
        .iter()
        .zip(target_pos_tags())
        .map(|(form, pos)| Token::new(form.as_ref(), pos))
        .collect();
    let (pronoun, embedded) = match reading {
        Reading::SubjRel => ("nsubj", "obj"),
        Reading::ObjRel => ("obj", "nsubj"),
    };
    let deprels = ["det", "root", pronoun, "det", embedded, "acl:relcl"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    DepTree::new(tokens, vec![2, 0, 6, 5, 6, 2], deprels).expect("template tree is valid")
}

pub fn gold_labels(reading: Reading) -> Vec<RelPosLabel> {
    let forms = ["De", "N", "die", "de", "N", "V"];
    encode(&gold_tree(reading, &forms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typelogic::{count_check, extract_reading};
    use crate::udencoding::extract_reading_ud;

    #[test]
    fn both_regimes_agree_on_the_reading() {
        for reading in Reading::ALL {
            let tags = gold_supertags(reading);
            assert_eq!(extract_reading(&tags[PRONOUN_INDEX]).unwrap(), reading);
            let labels = gold_labels(reading);
            assert_eq!(extract_reading_ud(&labels, PRONOUN_INDEX).unwrap(), reading);
            assert!(count_check(&tags, &goal()));
        }
    }

    #[test]
    fn labels_match_the_printed_encoding() {
        let printed: Vec<String> = gold_labels(Reading::SubjRel)
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(
            printed,
            [
                "(+1,N,det)",
                "(-1,ROOT,root)",
                "(+1,V,nsubj)",
                "(+1,N,det)",
                "(+1,V,obj)",
                "(-2,N,acl:relcl)"
            ]
        );
    }
}
