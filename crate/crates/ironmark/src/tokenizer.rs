//! Surface tokenizer preserving everything the marker detectors need:
//! case, punctuation runs, hashtags, emoticons and emoji.

use crate::lexicons::{EmojiCatalog, EmoticonCatalog};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Word,
    Hashtag,
    Mention,
    Url,
    Emoticon,
    Emoji,
    Punct,
    Number,
    Other,
}

/// One token with its surface form and character-offset span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    /// Half-open character-offset range into the source text.
    pub span: (usize, usize),
    pub kind: TokenKind,
}

impl Token {
    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word
    }
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

fn is_tag_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Rough check for picture characters: used only to count emoji that are
/// absent from the catalog.
pub fn is_emoji_like(c: char) -> bool {
    matches!(u32::from(c),
        0x1F000..=0x1FAFF      // emoji, symbols and pictographs
        | 0x2600..=0x27BF      // misc symbols and dingbats
        | 0x2B00..=0x2BFF      // arrows/stars block (contains 2B50 star)
        | 0xFE0F               // variation selector
        | 0x200D               // zero-width joiner
    )
}

/// Tokenize `text` into typed tokens.
///
/// At every position the first matching category in priority order wins:
/// Url, Emoticon, Emoji, Hashtag, Mention, Word/Number, Punct. Emoticon and
/// emoji matching is longest-match over the catalogs. Punctuation runs of
/// one repeated character form a single token, so "?!" is two adjacent
/// tokens while "!!!" is one. Unclassifiable characters become `Other`.
pub fn tokenize(text: &str, emoticons: &EmoticonCatalog, emoji: &EmojiCatalog) -> Vec<Token> {
    let indices: Vec<(usize, char)> = text.char_indices().collect();
    let chars: Vec<char> = indices.iter().map(|&(_, c)| c).collect();
    let n = chars.len();
    let byte_at = |i: usize| -> usize {
        if i < n {
            indices[i].0
        } else {
            text.len()
        }
    };

    let mut tokens = Vec::new();
    let mut i = 0;
    while i < n {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let rest = &text[byte_at(i)..];
        let kind;

        if rest.len() >= 7 && starts_with_url(rest) {
            while i < n && !chars[i].is_whitespace() {
                i += 1;
            }
            kind = TokenKind::Url;
        } else if let Some((byte_len, _)) = emoticons.match_at(rest) {
            i += rest[..byte_len].chars().count();
            kind = TokenKind::Emoticon;
        } else if let Some((char_len, _)) = emoji.match_at(&chars[i..]) {
            i += char_len;
            kind = TokenKind::Emoji;
        } else if c == '#' && i + 1 < n && is_tag_char(chars[i + 1]) {
            i += 1;
            while i < n && is_tag_char(chars[i]) {
                i += 1;
            }
            kind = TokenKind::Hashtag;
        } else if c == '@' && i + 1 < n && is_tag_char(chars[i + 1]) {
            i += 1;
            while i < n && is_tag_char(chars[i]) {
                i += 1;
            }
            kind = TokenKind::Mention;
        } else if c.is_alphabetic() {
            // Maximal run of letters with internal apostrophes: "i'm" and
            // "don't" stay single words, quote-like edge apostrophes do not
            // attach.
            i += 1;
            while i < n {
                if chars[i].is_alphabetic() {
                    i += 1;
                } else if is_apostrophe(chars[i]) && i + 1 < n && chars[i + 1].is_alphabetic() {
                    i += 2;
                } else {
                    break;
                }
            }
            kind = TokenKind::Word;
        } else if c.is_ascii_digit() {
            i += 1;
            while i < n {
                if chars[i].is_ascii_digit() {
                    i += 1;
                } else if (chars[i] == '.' || chars[i] == ',')
                    && i + 1 < n
                    && chars[i + 1].is_ascii_digit()
                {
                    i += 2;
                } else {
                    break;
                }
            }
            kind = TokenKind::Number;
        } else if c.is_ascii_punctuation() || is_extended_punct(c) {
            i += 1;
            while i < n && chars[i] == c {
                i += 1;
            }
            kind = TokenKind::Punct;
        } else {
            i += 1;
            kind = TokenKind::Other;
        }

        tokens.push(Token {
            surface: text[byte_at(start)..byte_at(i)].to_string(),
            span: (start, i),
            kind,
        });
    }
    tokens
}

fn starts_with_url(rest: &str) -> bool {
    let lower: String = rest.chars().take(8).flat_map(char::to_lowercase).collect();
    lower.starts_with("http://") || lower.starts_with("https://")
}

fn is_extended_punct(c: char) -> bool {
    matches!(
        c,
        '\u{201C}' | '\u{201D}' | '\u{2018}' | '\u{2019}' | '\u{2026}' | '\u{2013}' | '\u{2014}'
            | '\u{00A1}' | '\u{00BF}' | '\u{00AB}' | '\u{00BB}'
    )
}

/// Rebuild the original text from tokens plus the inter-token gaps.
/// Exists for the lossless-tokenization invariant; gaps are whitespace by
/// construction.
pub fn reconstruct(text: &str, tokens: &[Token]) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::new();
    let mut pos = 0;
    for t in tokens {
        out.extend(chars[pos..t.span.0].iter());
        out.push_str(&t.surface);
        pos = t.span.1;
    }
    out.extend(chars[pos..].iter());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicons::ResourceBundle;

    fn toks(text: &str) -> Vec<Token> {
        let bundle = ResourceBundle::bundled();
        tokenize(text, &bundle.emoticons, &bundle.emoji)
    }

    fn kinds(tokens: &[Token]) -> Vec<(String, TokenKind)> {
        tokens.iter().map(|t| (t.surface.clone(), t.kind)).collect()
    }

    #[test]
    fn wonderful_day_splits_word_word_punct_run() {
        let tokens = toks("WONDERFUL day!!!");
        assert_eq!(
            kinds(&tokens),
            vec![
                ("WONDERFUL".into(), TokenKind::Word),
                ("day".into(), TokenKind::Word),
                ("!!!".into(), TokenKind::Punct),
            ]
        );
    }

    #[test]
    fn hashtag_after_sentence() {
        let tokens = toks("cute text. #suck");
        assert_eq!(
            kinds(&tokens),
            vec![
                ("cute".into(), TokenKind::Word),
                ("text".into(), TokenKind::Word),
                (".".into(), TokenKind::Punct),
                ("#suck".into(), TokenKind::Hashtag),
            ]
        );
    }

    #[test]
    fn empty_text_yields_no_tokens() {
        assert!(toks("").is_empty());
    }

    #[test]
    fn trailing_emoticon_is_one_token() {
        let tokens = toks("AWESOME. :P");
        let last = tokens.last().unwrap();
        assert_eq!(last.kind, TokenKind::Emoticon);
        assert_eq!(last.surface, ":P");
    }

    #[test]
    fn mixed_punctuation_yields_adjacent_tokens() {
        let tokens = toks("what?!");
        assert_eq!(
            kinds(&tokens),
            vec![
                ("what".into(), TokenKind::Word),
                ("?".into(), TokenKind::Punct),
                ("!".into(), TokenKind::Punct),
            ]
        );
    }

    #[test]
    fn contraction_is_one_word() {
        let tokens = toks("i'm happy");
        assert_eq!(tokens[0].surface, "i'm");
        assert_eq!(tokens[0].kind, TokenKind::Word);
    }

    #[test]
    fn edge_apostrophes_stay_punctuation() {
        let tokens = toks("the 'great' one");
        assert_eq!(
            kinds(&tokens),
            vec![
                ("the".into(), TokenKind::Word),
                ("'".into(), TokenKind::Punct),
                ("great".into(), TokenKind::Word),
                ("'".into(), TokenKind::Punct),
                ("one".into(), TokenKind::Word),
            ]
        );
    }

    #[test]
    fn emoji_tokens_from_catalog() {
        let tokens = toks("so fun \u{1F612}\u{1F616}");
        let tail: Vec<_> = tokens[2..].iter().map(|t| t.kind).collect();
        assert_eq!(tail, vec![TokenKind::Emoji, TokenKind::Emoji]);
    }

    #[test]
    fn unknown_emoji_becomes_other() {
        // U+1FAE0 melting face is not in the bundled catalog.
        let tokens = toks("ok \u{1FAE0}");
        assert_eq!(tokens[1].kind, TokenKind::Other);
        assert!(is_emoji_like('\u{1FAE0}'));
    }

    #[test]
    fn url_mention_number() {
        let tokens = toks("@you see https://x.io/a?b=1 at 4S");
        assert_eq!(tokens[0].kind, TokenKind::Mention);
        assert_eq!(tokens[2].kind, TokenKind::Url);
        assert_eq!(tokens[2].surface, "https://x.io/a?b=1");
        assert_eq!(
            kinds(&tokens[4..]),
            vec![("4".into(), TokenKind::Number), ("S".into(), TokenKind::Word)]
        );
    }

    #[test]
    fn spans_are_char_offsets_and_lossless() {
        let text = "caf\u{e9} \u{1F621}!! ok";
        let tokens = toks(text);
        assert_eq!(reconstruct(text, &tokens), text);
        let chars: Vec<char> = text.chars().collect();
        for t in &tokens {
            let slice: String = chars[t.span.0..t.span.1].iter().collect();
            assert_eq!(slice, t.surface);
        }
    }

    #[test]
    fn bare_hash_is_punct() {
        let tokens = toks("# ok");
        assert_eq!(tokens[0].kind, TokenKind::Punct);
    }
}
