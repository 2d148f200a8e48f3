//! Malformed documents and the position each must be reported at.

use kgatlas_core::RdfFormat;

/// (format, document, expected line, expected column)
pub const NEGATIVE: &[(RdfFormat, &str, usize, usize)] = &[
    (RdfFormat::Turtle, "<a:s> <a:p> <a:o>", 1, 18),
    (RdfFormat::Turtle, "@prefix ex: <http://ex.org/> .\nex:s ex:p \"unterminated .\n", 2, 26),
    (RdfFormat::Turtle, "@prefix ex: <http://ex.org/> .\n\nex:s ex:p ( ex:a ) .", 3, 11),
    (RdfFormat::Turtle, "<a:s> <a:p> <a:o> .\n<a:s> <a:p> <bad iri> .", 2, 17),
    (RdfFormat::Turtle, "<a:s> <a:p> \"x\"@ .", 1, 16),
    (RdfFormat::Turtle, "<a:s> <a:p> \"x\"^^ .", 1, 19),
    (RdfFormat::Turtle, "<a:s> <a:p> \"\\q\" .", 1, 14),
    (RdfFormat::Turtle, "\n\n<a:s> <a:p> <a:o> ;\n  <a:q> .", 4, 9),
    (RdfFormat::Turtle, "<a:s> <a:p> [ <a:q> <a:o> .", 1, 27),
    (RdfFormat::Turtle, "@prefix ex <http://ex.org/> .", 1, 11),
    (RdfFormat::Turtle, "@keywords a .", 1, 1),
    (RdfFormat::Turtle, "\"lit\" <a:p> <a:o> .", 1, 1),
    (RdfFormat::Turtle, "<a:s> a a .", 1, 9),
    (RdfFormat::Turtle, "<a:s> <a:p> 1e .", 1, 14),
    (RdfFormat::Turtle, "<a:s> <a:p> <a:o> .\n\n\n<rel> <a:p> <a:o> .", 4, 1),
    (RdfFormat::Turtle, "<a:s> <a:p> \"\\u00G1\" .", 1, 14),
    (RdfFormat::Turtle, "_: <a:p> <a:o> .", 1, 1),
    (RdfFormat::Turtle, "<a:s> <a:p> <a:o> , .", 1, 21),
    (RdfFormat::Turtle, "<a:s> <a:p> <<a:o>> .", 1, 14),
    (RdfFormat::Turtle, "<a:s> <a:p> <a:o> .\n{ <a:s> <a:p> <a:o> }", 2, 1),
    (RdfFormat::NTriples, "<a:s> <a:p> <a:o> .\n<a:s> <a:p> <a:o>\n", 2, 18),
    (RdfFormat::NTriples, "<a:s> <a:p> \"x\" . <a:s> <a:p> \"y\" .", 1, 19),
    (RdfFormat::NTriples, "# comment\n<a:s> a <a:o> .", 2, 7),
    (RdfFormat::NTriples, "<a:s> <a:p> 'single' .", 1, 13),
    (RdfFormat::NTriples, "<a:s> <a:p> \"multi\nline\" .", 1, 19),
    (RdfFormat::NTriples, "\n<a:s> <a:p> \"x\"^^xsd:int .", 2, 18),
    (RdfFormat::NTriples, "<a:s> <relative> <a:o> .", 1, 7),
];
