//! Rule-based sentence splitter, used when no pre-split chunk file is given.

/// Split `text` into sentences.
///
/// A sentence boundary falls after `.`, `?` or `!` when it is followed by
/// whitespace and an uppercase letter. Terminal punctuation at end-of-text
/// closes the final sentence naturally. Sentences are trimmed; empty strings
/// are never returned.
pub fn split_sentences(text: &str) -> Vec<String> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut sentences = Vec::new();
    let mut start = 0usize;
    let mut i = 0usize;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if matches!(c, '.' | '?' | '!') {
            let mut j = i + 1;
            while j < chars.len() && chars[j].1.is_whitespace() {
                j += 1;
            }
            let saw_whitespace = j > i + 1;
            if saw_whitespace && j < chars.len() && chars[j].1.is_uppercase() {
                let sentence = text[start..pos + c.len_utf8()].trim();
                if !sentence.is_empty() {
                    sentences.push(sentence.to_string());
                }
                start = chars[j].0;
                i = j;
                continue;
            }
        }
        i += 1;
    }
    let tail = text[start..].trim();
    if !tail.is_empty() {
        sentences.push(tail.to_string());
    }
    sentences
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_on_uppercase_follow() {
        assert_eq!(
            split_sentences("Rats age. Mice do not."),
            vec!["Rats age.", "Mice do not."]
        );
    }

    #[test]
    fn empty_input_yields_empty_list() {
        assert_eq!(split_sentences(""), Vec::<String>::new());
        assert_eq!(split_sentences("   \t\n"), Vec::<String>::new());
    }

    #[test]
    fn abbreviation_before_digit_does_not_split() {
        assert_eq!(
            split_sentences("Approx. 5 mg was given. It worked."),
            vec!["Approx. 5 mg was given.", "It worked."]
        );
    }

    #[test]
    fn question_and_exclamation_terminate() {
        assert_eq!(
            split_sentences("Does it work? Yes! Fine."),
            vec!["Does it work?", "Yes!", "Fine."]
        );
    }

    #[test]
    fn punctuation_without_whitespace_does_not_split() {
        assert_eq!(split_sentences("e.g.This stays"), vec!["e.g.This stays"]);
    }

    #[test]
    fn lowercase_follow_does_not_split() {
        assert_eq!(
            split_sentences("The p. value was low."),
            vec!["The p. value was low."]
        );
    }
}
