//! Shared fixture corpus: hand-parsed contexts with gold identification and
//! resolution labels, plus generators for the training sanity checks.
#![allow(dead_code)] // each test target uses a different slice of this module
//!
//! Token specs are `surface|POS|head|label` with sentence-relative heads
//! (-1 = root); trees are bracketed with positional leaves. Dependencies
//! follow the spaCy/PTB conventions (prepositional objects attach to the
//! preposition) except where a fixture deliberately exercises the UD style.

use nfh::corpus::{
    AnchorSpan, EmbeddingTable, Example, ExampleBuilder, ImplicitClass,
};
use nfh::resolve::DeterministicPattern;
use nfh::rng::Rng;

/// One identification fixture: a parsed context and the anchors the rule
/// cascade must mark positive (possibly none).
pub struct IdFixture {
    pub name: &'static str,
    pub example: Example,
    pub expected: Vec<AnchorSpan>,
}

fn fx(
    name: &'static str,
    example: Example,
    expected: &[(usize, usize)],
) -> IdFixture {
    IdFixture {
        name,
        example,
        expected: expected.iter().map(|&(s, e)| AnchorSpan::new(s, e)).collect(),
    }
}

/// The full identification suite; covers every documented positive and
/// negative context plus the four filter families.
pub fn identification_fixtures() -> Vec<IdFixture> {
    let mut out = Vec::new();

    // -- Positives resolved elsewhere as Reference or Implicit heads --

    out.push(fx(
        "thing-or-two",
        ExampleBuilder::new("fix/id/thing-or-two")
            .sentence(
                "Maybe|RB|3|advmod I|PRP|3|nsubj can|MD|3|aux teach|VB|-1|root the|DT|5|det kid|NN|3|dative a|DT|7|det thing|NN|3|dobj or|CC|7|cc two|CD|7|conj .|.|3|punct",
                Some("(S (ADVP (RB Maybe)) (NP (PRP I)) (VP (MD can) (VB teach) (NP (DT the) (NN kid)) (NP (DT a) (NN thing) (CC or) (CD two))) (. .))"),
            )
            .anchor(9, 9)
            .gold_reference(&[7])
            .build()
            .unwrap(),
        &[(9, 9)],
    ));

    out.push(fx(
        "three-or-four-brothers",
        ExampleBuilder::new("fix/id/brothers")
            .sentence(
                "you|PRP|1|nsubj see|VBP|-1|root like|IN|1|prep 3|CD|6|nummod or|CC|3|cc 4|CD|3|conj brothers|NNS|2|pobj talkin'|VBG|6|acl",
                Some("(S (NP (PRP you)) (VP (VBP see) (PP (IN like) (NP (QP (CD 3) (CC or) (CD 4)) (NNS brothers) (VP (VBG talkin'))))))"),
            )
            .anchor(3, 3)
            .gold_reference(&[6])
            .build()
            .unwrap(),
        &[(3, 3)],
    ));

    out.push(fx(
        "clock-strikes-one",
        ExampleBuilder::new("fix/id/clock-one")
            .sentence(
                "When|WRB|3|advmod the|DT|2|det clock|NN|3|nsubj strikes|VBZ|-1|root one|CD|3|dobj ...|.|3|punct",
                Some("(SBAR (WHADVP (WRB When)) (S (NP (DT the) (NN clock)) (VP (VBZ strikes) (NP (CD one)))) (. ...))"),
            )
            .anchor(4, 4)
            .gold_implicit(ImplicitClass::Time)
            .build()
            .unwrap(),
        &[(4, 4)],
    ));

    out.push(fx(
        "perfect-10",
        ExampleBuilder::new("fix/id/perfect-10")
            .sentence(
                "My|PRP$|1|poss manager|NN|2|nsubj says|VBZ|-1|root I|PRP|4|nsubj 'm|VBP|2|ccomp a|DT|7|det perfect|JJ|7|amod 10|CD|4|attr !|.|2|punct",
                Some("(S (NP (PRP$ My) (NN manager)) (VP (VBZ says) (SBAR (S (NP (PRP I)) (VP (VBP 'm) (NP (DT a) (JJ perfect) (CD 10)))))) (. !))"),
            )
            .anchor(7, 7)
            .gold_implicit(ImplicitClass::Other)
            .build()
            .unwrap(),
        &[(7, 7)],
    ));

    out.push(fx(
        "one-of-the-reasons",
        ExampleBuilder::new("fix/id/reasons")
            .sentence(
                "See|VB|-1|root ,|,|0|punct that|DT|3|nsubj 's|VBZ|0|ccomp one|CD|3|attr of|IN|4|prep the|DT|7|det reasons|NNS|5|pobj I|PRP|9|nsubj love|VBP|7|relcl you|PRP|9|dobj",
                Some("(S (VB See) (, ,) (S (NP (DT that)) (VP (VBZ 's) (NP (NP (CD one)) (PP (IN of) (NP (NP (DT the) (NNS reasons)) (SBAR (S (NP (PRP I)) (VP (VBP love) (NP (PRP you)))))))))))"),
            )
            .anchor(4, 4)
            .gold_reference(&[7])
            .build()
            .unwrap(),
        &[(4, 4)],
    ));

    out.push(fx(
        "are-you-two-done",
        ExampleBuilder::new("fix/id/you-two-helium")
            .sentence(
                "Are|VBP|-1|root you|PRP|0|nsubj two|CD|1|appos done|JJ|0|acomp with|IN|3|prep that|DT|6|det helium|NN|4|pobj ?|.|0|punct",
                Some("(SQ (VBP Are) (NP (PRP you) (CD two)) (ADJP (JJ done) (PP (IN with) (NP (DT that) (NN helium)))) (. ?))"),
            )
            .anchor(2, 2)
            .gold_implicit(ImplicitClass::People)
            .build()
            .unwrap(),
        &[(2, 2)],
    ));

    out.push(fx(
        "no-one-cares",
        ExampleBuilder::new("fix/id/no-one-cares")
            .sentence(
                "No|DT|1|det one|CD|2|nsubj cares|VBZ|-1|root ,|,|2|punct dear|NN|2|npadvmod .|.|2|punct",
                Some("(S (NP (DT No) (CD one)) (VP (VBZ cares)) (, ,) (NP (NN dear)) (. .))"),
            )
            .anchor(1, 1)
            .gold_implicit(ImplicitClass::People)
            .build()
            .unwrap(),
        &[(1, 1)],
    ));

    // Two anchors in one context: "Men are like busses: if you miss one,
    // you can be sure there'll be soon another one..."
    let busses = |anchor: (usize, usize)| {
        ExampleBuilder::new(format!("fix/id/busses-{}", anchor.0))
            .sentence(
                "Men|NNS|1|nsubj are|VBP|-1|root like|IN|1|prep busses|NNS|2|pobj :|:|1|punct",
                Some("(S (NP (NNS Men)) (VP (VBP are) (PP (IN like) (NP (NNS busses)))) (: :))"),
            )
            .sentence(
                "If|IN|2|mark you|PRP|2|nsubj miss|VBP|8|advcl one|CD|2|dobj ,|,|8|punct you|PRP|8|nsubj can|MD|8|aux be|VB|8|cop sure|JJ|-1|root there|EX|11|expl 'll|MD|11|aux be|VB|8|ccomp soon|RB|11|advmod another|DT|14|det one|CD|11|attr ...|.|8|punct",
                Some("(S (SBAR (IN If) (S (NP (PRP you)) (VP (VBP miss) (NP (CD one))))) (, ,) (NP (PRP you)) (VP (MD can) (VB be) (ADJP (JJ sure)) (SBAR (S (NP (EX there)) (VP (MD 'll) (VB be) (ADVP (RB soon)) (NP (DT another) (CD one)))))) (. ...))"),
            )
            .anchor(anchor.0, anchor.1)
            .gold_reference(&[0, 3])
            .build()
            .unwrap()
    };
    out.push(fx("busses-first-one", busses((8, 8)), &[(8, 8), (19, 19)]));
    out.push(fx("busses-second-one", busses((19, 19)), &[(8, 8), (19, 19)]));

    out.push(fx(
        "happy-1969",
        ExampleBuilder::new("fix/id/happy-1969")
            .sentence(
                "I|PRP|2|nsubj 'd|MD|2|aux like|VB|-1|root to|TO|4|aux wish|VB|2|xcomp a|DT|7|det happy|JJ|7|amod 1969|CD|4|dobj to|IN|4|prep our|PRP$|11|poss new|JJ|11|amod President|NNP|8|pobj .|.|2|punct",
                Some("(S (NP (PRP I)) (VP (MD 'd) (VB like) (S (VP (TO to) (VB wish) (NP (DT a) (JJ happy) (CD 1969)) (PP (IN to) (NP (PRP$ our) (JJ new) (NNP President)))))) (. .))"),
            )
            .anchor(7, 7)
            .gold_implicit(ImplicitClass::Year)
            .build()
            .unwrap(),
        &[(7, 7)],
    ));

    out.push(fx(
        "turned-50",
        ExampleBuilder::new("fix/id/turned-50")
            .sentence(
                "I|PRP|2|nsubj probably|RB|2|advmod feel|VBP|-1|root worse|JJR|2|acomp than|IN|3|prep Demi|NNP|6|compound Moore|NNP|7|nsubj did|VBD|4|pcomp when|WRB|10|advmod she|PRP|10|nsubj turned|VBD|7|advcl 50|CD|10|dobj .|.|2|punct",
                Some("(S (NP (PRP I)) (ADVP (RB probably)) (VP (VBP feel) (ADJP (JJR worse)) (SBAR (IN than) (S (NP (NNP Demi) (NNP Moore)) (VP (VBD did) (SBAR (WHADVP (WRB when)) (S (NP (PRP she)) (VP (VBD turned) (NP (CD 50))))))))) (. .))"),
            )
            .anchor(11, 11)
            .gold_implicit(ImplicitClass::Age)
            .build()
            .unwrap(),
        &[(11, 11)],
    ));

    // Two anchors across two dialog turns: "How much was it? Two hundred,
    // but I'll tell him it's fifty."
    let how_much = |anchor: (usize, usize)| {
        ExampleBuilder::new(format!("fix/id/two-hundred-{}", anchor.0))
            .sentence(
                "How|WRB|1|advmod much|JJ|2|attr was|VBD|-1|root it|PRP|2|nsubj ?|.|2|punct",
                Some("(SBARQ (WHADJP (WRB How) (JJ much)) (SQ (VBD was) (NP (PRP it))) (. ?))"),
            )
            .new_turn()
            .sentence(
                "Two|CD|1|compound hundred|CD|-1|root ,|,|1|punct but|CC|1|cc I|PRP|6|nsubj 'll|MD|6|aux tell|VB|1|conj him|PRP|6|dative it|PRP|9|nsubj 's|VBZ|6|ccomp fifty|CD|9|attr .|.|1|punct",
                Some("(S (NP (QP (CD Two) (CD hundred))) (, ,) (CC but) (S (NP (PRP I)) (VP (MD 'll) (VB tell) (NP (PRP him)) (SBAR (S (NP (PRP it)) (VP (VBZ 's) (NP (CD fifty))))))) (. .))"),
            )
            .anchor(anchor.0, anchor.1)
            .gold_implicit(ImplicitClass::Currency)
            .build()
            .unwrap()
    };
    out.push(fx("two-hundred", how_much((5, 6)), &[(5, 6), (15, 15)]));
    out.push(fx("tell-him-fifty", how_much((15, 15)), &[(5, 6), (15, 15)]));

    out.push(fx(
        "unexpressed-thought",
        ExampleBuilder::new("fix/id/unexpressed-thought")
            .sentence(
                "Have|VBP|3|aux you|PRP|3|nsubj ever|RB|3|advmod had|VBN|-1|root an|DT|6|det unexpressed|JJ|6|amod thought|NN|3|dobj ?|.|3|punct",
                Some("(SQ (VBP Have) (NP (PRP you)) (ADVP (RB ever)) (VP (VBN had) (NP (DT an) (JJ unexpressed) (NN thought))) (. ?))"),
            )
            .new_turn()
            .sentence(
                "I|PRP|2|nsubj 'm|VBP|2|aux having|VBG|-1|root one|CD|2|dobj now|RB|2|advmod .|.|2|punct",
                Some("(S (NP (PRP I)) (VP (VBP 'm) (VBG having) (NP (CD one)) (ADVP (RB now))) (. .))"),
            )
            .anchor(11, 11)
            .gold_reference(&[6])
            .build()
            .unwrap(),
        &[(11, 11)],
    ));

    out.push(fx(
        "loved-one",
        ExampleBuilder::new("fix/id/loved-one")
            .sentence(
                "It|PRP|1|nsubj 's|VBZ|-1|root a|DT|4|det curious|JJ|4|amod thing|NN|1|attr ,|,|4|punct the|DT|7|det death|NN|4|appos of|IN|7|prep a|DT|11|det loved|JJ|11|amod one|CD|8|pobj .|.|1|punct",
                Some("(S (NP (PRP It)) (VP (VBZ 's) (NP (NP (DT a) (JJ curious) (NN thing)) (, ,) (NP (NP (DT the) (NN death)) (PP (IN of) (NP (DT a) (JJ loved) (CD one)))))) (. .))"),
            )
            .anchor(11, 11)
            .gold_implicit(ImplicitClass::People)
            .build()
            .unwrap(),
        &[(11, 11)],
    ));

    out.push(fx(
        "taken-two-over",
        ExampleBuilder::new("fix/id/taken-two")
            .sentence(
                "I|PRP|2|nsubj 've|VBP|2|aux taken|VBN|-1|root two|CD|2|dobj over|RP|2|prt .|.|2|punct",
                Some("(S (NP (PRP I)) (VP (VBP 've) (VBN taken) (NP (CD two)) (PRT (RP over))) (. .))"),
            )
            .sentence(
                "Some|DT|3|det fussy|JJ|3|amod old|JJ|3|amod maid|NN|-1|root and|CC|3|cc some|DT|8|det flashy|JJ|8|amod young|JJ|8|amod man|NN|3|conj .|.|3|punct",
                Some("(NP (NP (DT Some) (JJ fussy) (JJ old) (NN maid)) (CC and) (NP (DT some) (JJ flashy) (JJ young) (NN man)) (. .))"),
            )
            .anchor(3, 3)
            .gold_reference(&[9, 14])
            .build()
            .unwrap(),
        &[(3, 3)],
    ));

    out.push(fx(
        "im-42",
        ExampleBuilder::new("fix/id/im-42")
            .sentence(
                "I|PRP|1|nsubj 'm|VBP|-1|root 42|CD|1|attr ,|,|1|punct Cercie|NNP|1|npadvmod .|.|1|punct",
                Some("(S (NP (PRP I)) (VP (VBP 'm) (NP (CD 42))) (, ,) (NP (NNP Cercie)) (. .))"),
            )
            .anchor(2, 2)
            .gold_implicit(ImplicitClass::Age)
            .build()
            .unwrap(),
        &[(2, 2)],
    ));

    out.push(fx(
        "worth-two-million",
        ExampleBuilder::new("fix/id/two-million")
            .sentence(
                "It|PRP|1|nsubj 's|VBZ|-1|root worth|JJ|1|acomp about|RB|5|advmod two|CD|5|compound million|CD|2|npadvmod .|.|1|punct",
                Some("(S (NP (PRP It)) (VP (VBZ 's) (ADJP (JJ worth) (NP (QP (RB about) (CD two) (CD million))))) (. .))"),
            )
            .anchor(4, 5)
            .gold_implicit(ImplicitClass::Currency)
            .build()
            .unwrap(),
        &[(4, 5)],
    ));

    out.push(fx(
        "three-at-the-most",
        ExampleBuilder::new("fix/id/three-at-most")
            .sentence(
                "I|PRP|2|nsubj 've|VBP|2|aux got|VBN|-1|root two|CD|4|nummod months|NNS|2|dobj left|VBN|4|acl ,|,|2|punct three|CD|4|conj at|IN|7|prep the|DT|10|det most|JJS|8|pobj .|.|2|punct",
                Some("(S (NP (PRP I)) (VP (VBP 've) (VBN got) (NP (NP (CD two) (NNS months)) (VP (VBN left)) (, ,) (NP (NP (CD three)) (PP (IN at) (NP (DT the) (JJS most)))))) (. .))"),
            )
            .anchor(7, 7)
            .gold_reference(&[4])
            .build()
            .unwrap(),
        &[(7, 7)],
    ));

    out.push(fx(
        "eight-or-nine-clubs",
        ExampleBuilder::new("fix/id/clubs")
            .sentence(
                "I|PRP|1|nsubj saw|VBD|-1|root eight|CD|5|nummod or|CC|2|cc nine|CD|2|conj clubs|NNS|1|dobj .|.|1|punct",
                Some("(S (NP (PRP I)) (VP (VBD saw) (NP (CD eight) (CC or) (CD nine) (NNS clubs))) (. .))"),
            )
            .anchor(2, 2)
            .gold_reference(&[5])
            .build()
            .unwrap(),
        &[(2, 2)],
    ));

    out.push(fx(
        "theresa-is-the-one",
        ExampleBuilder::new("fix/id/theresa")
            .sentence(
                "Theresa|NNP|1|nsubj is|VBZ|-1|root the|DT|3|det one|CD|1|attr .|.|1|punct",
                Some("(S (NP (NNP Theresa)) (VP (VBZ is) (NP (DT the) (CD one))) (. .))"),
            )
            .anchor(3, 3)
            .gold_reference(&[0])
            .build()
            .unwrap(),
        &[(3, 3)],
    ));

    out.push(fx(
        "two-of-them",
        ExampleBuilder::new("fix/id/two-of-them")
            .sentence(
                "Two|CD|3|nsubj of|IN|0|prep them|PRP|1|pobj stayed|VBD|-1|root .|.|3|punct",
                Some("(S (NP (NP (CD Two)) (PP (IN of) (NP (PRP them)))) (VP (VBD stayed)) (. .))"),
            )
            .anchor(0, 0)
            .gold_implicit(ImplicitClass::People)
            .build()
            .unwrap(),
        &[(0, 0)],
    ));

    out.push(fx(
        "five-of-the-children",
        ExampleBuilder::new("fix/id/five-children")
            .sentence(
                "Five|CD|4|nsubj of|IN|3|case the|DT|3|det children|NNS|0|nmod left|VBD|-1|root .|.|4|punct",
                Some("(S (NP (NP (CD Five)) (PP (IN of) (NP (DT the) (NNS children)))) (VP (VBD left)) (. .))"),
            )
            .anchor(0, 0)
            .gold_reference(&[3])
            .build()
            .unwrap(),
        &[(0, 0)],
    ));

    out.push(fx(
        "you-two-rest",
        ExampleBuilder::new("fix/id/you-two-rest")
            .sentence(
                "You|PRP|3|nsubj two|CD|0|appos should|MD|3|aux rest|VB|-1|root .|.|3|punct",
                Some("(S (NP (PRP You) (CD two)) (VP (MD should) (VB rest)) (. .))"),
            )
            .anchor(1, 1)
            .gold_implicit(ImplicitClass::People)
            .build()
            .unwrap(),
        &[(1, 1)],
    ));

    out.push(fx(
        "no-one-will-know",
        ExampleBuilder::new("fix/id/no-one-knows")
            .sentence(
                "No|DT|1|det one|CD|3|nsubj will|MD|3|aux know|VB|-1|root .|.|3|punct",
                Some("(S (NP (DT No) (CD one)) (VP (MD will) (VB know)) (. .))"),
            )
            .anchor(1, 1)
            .gold_implicit(ImplicitClass::People)
            .build()
            .unwrap(),
        &[(1, 1)],
    ));

    out.push(fx(
        "leave-at-seven",
        ExampleBuilder::new("fix/id/at-seven")
            .sentence(
                "We|PRP|1|nsubj leave|VBP|-1|root at|IN|1|prep seven|CD|2|pobj .|.|1|punct",
                Some("(S (NP (PRP We)) (VP (VBP leave) (PP (IN at) (NP (CD seven)))) (. .))"),
            )
            .anchor(3, 3)
            .gold_implicit(ImplicitClass::Time)
            .build()
            .unwrap(),
        &[(3, 3)],
    ));

    out.push(fx(
        "born-in-1969",
        ExampleBuilder::new("fix/id/born-1969")
            .sentence(
                "He|PRP|2|nsubjpass was|VBD|2|auxpass born|VBN|-1|root in|IN|2|prep 1969|CD|3|pobj .|.|2|punct",
                Some("(S (NP (PRP He)) (VP (VBD was) (VBN born) (PP (IN in) (NP (CD 1969)))) (. .))"),
            )
            .anchor(4, 4)
            .gold_implicit(ImplicitClass::Year)
            .build()
            .unwrap(),
        &[(4, 4)],
    ));

    out.push(fx(
        "ate-thirty-six",
        ExampleBuilder::new("fix/id/thirty-six")
            .sentence(
                "He|PRP|1|nsubj ate|VBD|-1|root thirty|CD|3|compound six|CD|1|dobj .|.|1|punct",
                Some("(S (NP (PRP He)) (VP (VBD ate) (QP (CD thirty) (CD six))) (. .))"),
            )
            .anchor(2, 3)
            .gold_implicit(ImplicitClass::Other)
            .build()
            .unwrap(),
        &[(2, 3)],
    ));

    out.push(fx(
        "eight-token-anchor",
        ExampleBuilder::new("fix/id/long-number")
            .sentence(
                "Fifteen|CD|1|compound million|CD|7|compound sixty|CD|3|compound one|CD|4|compound thousand|CD|7|compound and|CC|7|cc seventy|CD|7|compound six|CD|-1|root .|.|7|punct",
                Some("(NP (QP (CD Fifteen) (CD million) (CD sixty) (CD one) (CD thousand) (CC and) (CD seventy) (CD six)) (. .))"),
            )
            .anchor(0, 7)
            .gold_implicit(ImplicitClass::Currency)
            .build()
            .unwrap(),
        &[(0, 7)],
    ));

    out.push(fx(
        "take-two",
        ExampleBuilder::new("fix/id/take-two")
            .sentence(
                "Take|VB|-1|root two|CD|0|dobj .|.|0|punct",
                Some("(S (VP (VB Take) (NP (CD two))) (. .))"),
            )
            .anchor(1, 1)
            .gold_implicit(ImplicitClass::Other)
            .build()
            .unwrap(),
        &[(1, 1)],
    ));

    out.push(fx(
        "give-me-five",
        ExampleBuilder::new("fix/id/give-five")
            .sentence(
                "Give|VB|-1|root me|PRP|0|dative five|CD|0|dobj !|.|0|punct",
                Some("(S (VP (VB Give) (NP (PRP me)) (NP (CD five))) (. !))"),
            )
            .anchor(2, 2)
            .gold_implicit(ImplicitClass::Other)
            .build()
            .unwrap(),
        &[(2, 2)],
    ));

    out.push(fx(
        "chicken-cordon-bleu",
        ExampleBuilder::new("fix/id/cordon-bleu")
            .sentence(
                "I|PRP|1|nsubj make|VBP|-1|root an|DT|6|det amazing|JJ|6|amod Chicken|NNP|6|compound Cordon|NNP|6|compound Bleu|NNP|1|dobj .|.|1|punct",
                Some("(S (NP (PRP I)) (VP (VBP make) (NP (DT an) (JJ amazing) (NNP Chicken) (NNP Cordon) (NNP Bleu))) (. .))"),
            )
            .new_turn()
            .sentence(
                "She|PRP|1|nsubj said|VBD|-1|root she|PRP|5|nsubj 'd|MD|5|aux never|RB|5|neg had|VBN|1|ccomp one|CD|5|dobj .|.|1|punct",
                Some("(S (NP (PRP She)) (VP (VBD said) (SBAR (S (NP (PRP she)) (VP (MD 'd) (ADVP (RB never)) (VBN had) (NP (CD one)))))) (. .))"),
            )
            .anchor(14, 14)
            .gold_reference(&[6])
            .build()
            .unwrap(),
        &[(14, 14)],
    ));

    out.push(fx(
        "maybe-sixty",
        ExampleBuilder::new("fix/id/maybe-sixty")
            .sentence(
                "It|PRP|1|nsubj cost|VBD|-1|root fifty|CD|3|nummod bucks|NNS|1|dobj ,|,|1|punct maybe|RB|6|advmod sixty|CD|3|conj .|.|1|punct",
                Some("(S (NP (PRP It)) (VP (VBD cost) (NP (NP (CD fifty) (NNS bucks)) (, ,) (ADVP (RB maybe)) (NP (CD sixty)))) (. .))"),
            )
            .anchor(6, 6)
            .gold_reference(&[3])
            .build()
            .unwrap(),
        &[(6, 6)],
    ));

    out.push(fx(
        "lost-six",
        ExampleBuilder::new("fix/id/lost-six")
            .sentence(
                "The|DT|2|det lost|JJ|2|amod six|CD|3|nsubj belong|VBP|-1|root in|IN|3|prep Thorn|NNP|6|compound Valley|NNP|4|pobj .|.|3|punct",
                Some("(S (NP (DT The) (JJ lost) (CD six)) (VP (VBP belong) (PP (IN in) (NP (NNP Thorn) (NNP Valley)))) (. .))"),
            )
            .anchor(2, 2)
            .gold_implicit(ImplicitClass::Other)
            .build()
            .unwrap(),
        &[(2, 2)],
    ));

    out.push(fx(
        "struck-twelve",
        ExampleBuilder::new("fix/id/struck-twelve")
            .sentence(
                "When|WRB|3|advmod the|DT|2|det clock|NN|3|nsubj struck|VBD|7|advcl twelve|CD|3|dobj ,|,|7|punct she|PRP|7|nsubj ran|VBD|-1|root .|.|7|punct",
                Some("(S (SBAR (WHADVP (WRB When)) (S (NP (DT the) (NN clock)) (VP (VBD struck) (NP (CD twelve))))) (, ,) (NP (PRP she)) (VP (VBD ran)) (. .))"),
            )
            .anchor(4, 4)
            .gold_implicit(ImplicitClass::Time)
            .build()
            .unwrap(),
        &[(4, 4)],
    ));

    out.push(fx(
        "twenty-one-hyphen",
        ExampleBuilder::new("fix/id/twenty-one")
            .sentence(
                "She|PRP|1|nsubj is|VBZ|-1|root twenty-one|CD|1|attr .|.|1|punct",
                Some("(S (NP (PRP She)) (VP (VBZ is) (NP (CD twenty-one))) (. .))"),
            )
            .anchor(2, 2)
            .gold_implicit(ImplicitClass::Age)
            .build()
            .unwrap(),
        &[(2, 2)],
    ));

    // -- Negatives: ordinary numbers with visible heads --

    out.push(fx(
        "one-thing-to-be-said",
        ExampleBuilder::new("fix/id/one-thing")
            .sentence(
                "One|CD|1|nummod thing|NN|-1|root to|TO|4|aux be|VB|4|auxpass said|VBN|1|acl about|IN|4|prep traveling|VBG|5|pcomp by|IN|6|prep stage|NN|7|pobj .|.|1|punct",
                Some("(NP (NP (CD One) (NN thing)) (S (VP (TO to) (VB be) (VBN said) (PP (IN about) (S (VP (VBG traveling) (PP (IN by) (NP (NN stage)))))))) (. .))"),
            )
            .anchor(0, 0)
            .build()
            .unwrap(),
        &[],
    ));

    out.push(fx(
        "seven-long-years",
        ExampleBuilder::new("fix/id/seven-years")
            .sentence(
                "After|IN|-1|root seven|CD|3|nummod long|JJ|3|amod years|NNS|0|pobj ...|.|0|punct",
                Some("(PP (IN After) (NP (CD seven) (JJ long) (NNS years)) (. ...))"),
            )
            .anchor(1, 1)
            .build()
            .unwrap(),
        &[],
    ));

    out.push(fx(
        "one-too-many-cosmos",
        ExampleBuilder::new("fix/id/cosmos")
            .sentence(
                "You|PRP|2|nsubj 've|VBP|2|aux had|VBN|-1|root one|CD|6|dep too|RB|5|advmod many|JJ|6|amod cosmos|NNS|2|dobj .|.|2|punct",
                Some("(S (NP (PRP You)) (VP (VBP 've) (VBN had) (NP (CD one)) (ADJP (RB too) (JJ many)) (NP (NNS cosmos))) (. .))"),
            )
            .anchor(3, 3)
            .build()
            .unwrap(),
        &[],
    ));

    out.push(fx(
        "apollo-11-weapon",
        ExampleBuilder::new("fix/id/apollo-weapon")
            .sentence(
                "Apollo|NNP|5|nsubj 11|CD|0|flat 's|VBZ|5|cop your|PRP$|5|poss secret|JJ|5|amod weapon|NN|-1|root ?|.|5|punct",
                Some("(SQ (NP (NNP Apollo) (CD 11)) (VP (VBZ 's) (NP (PRP$ your) (JJ secret) (NN weapon))) (. ?))"),
            )
            .anchor(1, 1)
            .build()
            .unwrap(),
        &[],
    ));

    out.push(fx(
        "apollo-11-misparse",
        ExampleBuilder::new("fix/id/apollo-misparse")
            .sentence(
                "Apollo|NNP|2|nsubj 11|CD|0|flat is|VBZ|-1|root ready|JJ|2|acomp .|.|2|punct",
                Some("(S (NP (NNP Apollo)) (NP (CD 11)) (VP (VBZ is) (ADJP (JJ ready))) (. .))"),
            )
            .anchor(1, 1)
            .build()
            .unwrap(),
        &[],
    ));

    out.push(fx(
        "dollar-100",
        ExampleBuilder::new("fix/id/dollar-100")
            .sentence(
                "It|PRP|1|nsubj costs|VBZ|-1|root $|$|3|nmod 100|CD|1|dobj .|.|1|punct",
                Some("(S (NP (PRP It)) (VP (VBZ costs) (NP ($ $) (CD 100))) (. .))"),
            )
            .anchor(3, 3)
            .build()
            .unwrap(),
        &[],
    ));

    out.push(fx(
        "route-66-nummod",
        ExampleBuilder::new("fix/id/route-66")
            .sentence(
                "Route|NNP|2|nsubj 66|CD|0|nummod runs|VBZ|-1|root west|RB|2|advmod .|.|2|punct",
                Some("(S (NP (NNP Route)) (NP (CD 66)) (VP (VBZ runs) (ADVP (RB west))) (. .))"),
            )
            .anchor(1, 1)
            .build()
            .unwrap(),
        &[],
    ));

    out.push(fx(
        "bought-three-books",
        ExampleBuilder::new("fix/id/three-books")
            .sentence(
                "I|PRP|1|nsubj bought|VBD|-1|root three|CD|3|nummod books|NNS|1|dobj .|.|1|punct",
                Some("(S (NP (PRP I)) (VP (VBD bought) (NP (CD three) (NNS books))) (. .))"),
            )
            .anchor(2, 2)
            .build()
            .unwrap(),
        &[],
    ));

    out.push(fx(
        "the-first-time",
        ExampleBuilder::new("fix/id/first-time")
            .sentence(
                "The|DT|2|det first|JJ|2|amod time|NN|-1|root I|PRP|4|nsubj saw|VBD|2|relcl him|PRP|4|dobj .|.|2|punct",
                Some("(NP (NP (DT The) (JJ first) (NN time)) (SBAR (S (NP (PRP I)) (VP (VBD saw) (NP (PRP him))))) (. .))"),
            )
            .anchor(1, 1)
            .build()
            .unwrap(),
        &[],
    ));

    out.push(fx(
        "one-true-god",
        ExampleBuilder::new("fix/id/one-true-god")
            .sentence(
                "Our|PRP$|1|poss God|NNP|2|nsubj is|VBZ|-1|root the|DT|6|det one|CD|6|nummod true|JJ|6|amod God|NNP|2|attr .|.|2|punct",
                Some("(S (NP (PRP$ Our) (NNP God)) (VP (VBZ is) (NP (DT the) (CD one) (JJ true) (NNP God))) (. .))"),
            )
            .anchor(4, 4)
            .build()
            .unwrap(),
        &[],
    ));

    out.push(fx(
        "flight-714",
        ExampleBuilder::new("fix/id/flight-714")
            .sentence(
                "Flight|NN|2|nsubj 714|CD|0|nummod departs|VBZ|-1|root .|.|2|punct",
                Some("(S (NP (NN Flight) (CD 714)) (VP (VBZ departs)) (. .))"),
            )
            .anchor(1, 1)
            .build()
            .unwrap(),
        &[],
    ));

    out.push(fx(
        "seven-hundred-pages",
        ExampleBuilder::new("fix/id/seven-hundred-pages")
            .sentence(
                "Numbers|NNS|5|nsubj like|IN|0|prep seven|CD|3|compound hundred|CD|4|nummod pages|NNS|1|pobj bore|VBP|-1|root me|PRP|5|dobj .|.|5|punct",
                Some("(S (NP (NP (NNS Numbers)) (PP (IN like) (NP (CD seven) (CD hundred) (NNS pages)))) (VP (VBP bore) (NP (PRP me))) (. .))"),
            )
            .anchor(2, 3)
            .build()
            .unwrap(),
        &[],
    ));

    out
}

/// A resolution fixture: a gold-labeled example with the deterministic
/// pattern it must (or must not) fire.
pub struct ResFixture {
    pub name: &'static str,
    pub example: Example,
    pub pattern: Option<DeterministicPattern>,
}

/// Gold-labeled resolution cases split by deterministic-pattern coverage.
pub fn resolution_fixtures() -> Vec<ResFixture> {
    let by_name = |name: &str| {
        identification_fixtures()
            .into_iter()
            .find(|f| f.name == name)
            .map(|f| f.example)
            .unwrap()
    };
    vec![
        ResFixture {
            name: "no-one-cares",
            example: by_name("no-one-cares"),
            pattern: Some(DeterministicPattern::NoOne),
        },
        ResFixture {
            name: "no-one-will-know",
            example: by_name("no-one-will-know"),
            pattern: Some(DeterministicPattern::NoOne),
        },
        ResFixture {
            name: "are-you-two-done",
            example: by_name("are-you-two-done"),
            pattern: Some(DeterministicPattern::YouTwo),
        },
        ResFixture {
            name: "you-two-rest",
            example: by_name("you-two-rest"),
            pattern: Some(DeterministicPattern::YouTwo),
        },
        ResFixture {
            name: "one-of-the-reasons",
            example: by_name("one-of-the-reasons"),
            pattern: Some(DeterministicPattern::Partitive),
        },
        ResFixture {
            name: "five-of-the-children",
            example: by_name("five-of-the-children"),
            pattern: Some(DeterministicPattern::Partitive),
        },
        ResFixture {
            name: "theresa-is-the-one",
            example: by_name("theresa-is-the-one"),
            pattern: Some(DeterministicPattern::Copular),
        },
        ResFixture {
            name: "thing-or-two",
            example: by_name("thing-or-two"),
            pattern: None,
        },
        ResFixture {
            name: "two-of-them",
            example: by_name("two-of-them"),
            pattern: None,
        },
        ResFixture {
            name: "loved-one",
            example: by_name("loved-one"),
            pattern: None,
        },
        ResFixture {
            name: "busses-first-one",
            example: by_name("busses-first-one"),
            pattern: None,
        },
        ResFixture {
            name: "unexpressed-thought",
            example: by_name("unexpressed-thought"),
            pattern: None,
        },
        ResFixture {
            name: "im-42",
            example: by_name("im-42"),
            pattern: None,
        },
        ResFixture {
            name: "happy-1969",
            example: by_name("happy-1969"),
            pattern: None,
        },
        ResFixture {
            name: "three-at-the-most",
            example: by_name("three-at-the-most"),
            pattern: None,
        },
    ]
}

/// Synthetic training corpus for the overfit check: half implicit labels
/// cycling through the six classes, half references to a per-example noun.
/// Every example has a distinct content word so it is memorizable.
pub fn overfit_corpus(n: usize) -> Vec<Example> {
    let classes = [
        ImplicitClass::Year,
        ImplicitClass::Age,
        ImplicitClass::Currency,
        ImplicitClass::People,
        ImplicitClass::Time,
        ImplicitClass::Other,
    ];
    (0..n)
        .map(|i| {
            if i % 2 == 0 {
                let class = classes[(i / 2) % classes.len()];
                ExampleBuilder::new(format!("synth{i}/imp"))
                    .sentence(
                        &format!(
                            "q{i}|NN|1|nsubj is|VBZ|-1|root {}|CD|1|attr .|.|1|punct",
                            20 + i
                        ),
                        None,
                    )
                    .anchor(2, 2)
                    .gold_implicit(class)
                    .build()
                    .unwrap()
            } else {
                ExampleBuilder::new(format!("synth{i}/ref"))
                    .sentence(
                        &format!(
                            "the|DT|1|det n{i}|NN|2|nsubj arrived|VBD|-1|root and|CC|2|cc I|PRP|5|nsubj took|VBD|2|conj one|CD|5|dobj .|.|2|punct"
                        ),
                        None,
                    )
                    .anchor(6, 6)
                    .gold_reference(&[1])
                    .build()
                    .unwrap()
            }
        })
        .collect()
}

/// Embedding table covering every word of `examples`, random but seeded.
pub fn embeddings_for(examples: &[Example], dim: usize, seed: u64) -> EmbeddingTable {
    let mut rng = Rng::new(seed);
    let mut seen = std::collections::BTreeSet::new();
    for ex in examples {
        for tok in &ex.tokens {
            seen.insert(tok.lower.clone());
        }
    }
    EmbeddingTable::new(
        seen.into_iter()
            .map(|w| (w, (0..dim).map(|_| rng.uniform(-0.5, 0.5)).collect()))
            .collect(),
    )
    .unwrap()
}
