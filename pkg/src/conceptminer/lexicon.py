"""Embedded word lists backing the built-in tagger and lemmatizer.

The lists are deliberately small: they cover closed-class function words
(which are discarded as minor categories), a core open-class vocabulary
biased towards academic prose, and the common irregular inflections.
Anything outside them falls through to suffix heuristics. Projects that
need higher annotation fidelity should supply pre-annotated input instead
of relying on this lexicon.
"""

from __future__ import annotations

# Closed-class forms. Tokens whose lowercased surface appears here are
# treated as minor-category words and never emitted.
FUNCTION_WORDS = frozenset("""
a an the this that these those each every either neither some any no all
both few fewer many much more most other another such same own several
enough certain
i you he she it we they me him her us them my your his its our their
mine yours hers ours theirs myself yourself himself herself itself
ourselves yourselves themselves who whom whose which what whatever
whichever whoever something anything nothing everything someone anyone
everyone somebody anybody nobody everybody none one ones oneself
of in to for with on at by from up about into over after under between
out against during without before above below around among through upon
across behind beyond within along near off onto toward towards despite
per via amid
and or but nor so yet if because although though while whereas unless
since until when whenever where wherever whether however therefore thus
hence moreover furthermore nevertheless nonetheless meanwhile otherwise
than as
be am is are was were been being have has had having do does did doing
done will would shall should may might must can could cannot ought
not n't yes
there here then now
two three four five six seven eight nine ten hundred thousand million
first second third once twice
etc et al ie eg
""".split())

# Open-class lexicon: lowercase word form -> major-category code.
# One primary tag per form; context-free by design.
POS_LEXICON: dict[str, str] = {}

_NOUNS = """
ability account achievement activity agent analysis approach argument
article aspect assessment association attention attribute author
behaviour behavior benefit capacity case category change chemistry claim
class cloud collaboration collection combination communication community
comparison component composition computer concept conclusion condition
consequence context contrast contribution control corpus correlation
course creativity creature criterion culture curiosity datum data debate
decade decision definition degree design detail development device
difference dimension discipline discovery discussion distribution domain
education effect effort element emergence emotion emphasis energy
engineering environment equation error evaluation evidence exam example
experiment experimentation expertise explanation exploration expression
factor feature feedback feeling field figure finding flexibility focus
form framework freedom function future gap generation genius goal group
growth history hypothesis idea imagination impact implication importance
improvisation independence individual influence information innovation
insight inspiration instance instrument intelligence intention interest
interaction interpretation intuition invention inventor investigation
issue journal judgement judgment kind knowledge laboratory language
learning level life limit link list literature logic machine magnitude
manner material mathematics matter meaning measure measurement mechanism
medium member memory metal method methodology mind model motivation
movement music nature need network notion novelty number object
observation openness opportunity option order organisation organization
originality outcome output paper paradigm part participant pattern
people perception performance period person personality perspective
phenomenon philosophy physics plan play point policy possibility
potential practice principle probability problem procedure process
product production program progress progression project property
proportion protein protocol psychology purpose quality quantity question
range rate reaction reader reasoning reference relation relationship
report research researcher resource response result review risk role
rule sample scale school science scientist score section sense sentence
series session set show sign significance simulation situation skill
society solution source species spectrum speed spontaneity stage
standard state statement statistic step strategy structure student study
style subject success suggestion support surface survey system table
talent target task teacher technique technology temperature tendency
term test testing text theory thing thinking thought time tool topic
tradition training trait type uncertainty understanding unit use user
validity value variability variable variance variation variety version
view vision water way word work writer year
""".split()

_VERBS = """
accept achieve act adapt add address adopt affect agree aim allow
analyse analyze appear apply argue arise ask assess assign associate
assume attempt avoid base become begin believe bring build calculate
call carry cause challenge change choose cite claim classify collect
combine come communicate compare compete compose compute conclude
conduct confirm connect consider consist constitute construct contain
continue contribute control cool create define demonstrate depend derive
describe design determine develop devise differ discover discuss
distinguish diverge draw emerge employ enable encourage engage enhance
establish estimate evaluate evolve examine exceed exist expect
experiment explain explore express extend fail fall find flow focus
follow form formulate gain generate get give go grow happen heat hold
identify illustrate imagine improve improvise include increase indicate
influence inform innovate inspire interact interpret invent investigate
involve judge keep know lead learn let like link live look make manage
mean measure meet motivate move need note observe obtain occur offer
operate originate participate perceive perform persist place plan play
point predict prefer prepare present produce promote propose provide
publish pursue raise reach react read reason recall receive recognise
recognize record reduce refer reflect regard relate remain remember
remove report represent require resolve respond result reveal review
rise run say see seek seem select separate serve set share show solve
speak specify stand start state stimulate study succeed suggest support
suppose take talk teach tend test think train transform try turn
understand use validate value vary want work write yield
""".split()

_ADJECTIVES = """
able abstract academic active actual aesthetic alternative ambiguous
appropriate artistic available average aware basic broad central certain
classic clear cognitive coherent common complex comprehensive
computational conceptual concrete conscious consistent constant
contemporary conventional creative critical cultural current deep
deliberate dependent detailed different difficult direct distinct
divergent diverse dynamic early easy educational effective emergent
emotional empirical environmental essential everyday exact exceptional
experimental expert explicit external extreme famous final flexible
fluent formal free fresh full fundamental general generative good great
high human imaginative important independent individual influential
ingenious innovative insightful intellectual intelligent intense
internal intrinsic intuitive inventive key large late light likely
linear little local logical long low main major mathematical mature
mental minor modern multiple musical mutual narrow natural necessary
negative new normal notable novel objective open ordinary original
particular perceptual personal physical playful poor popular positive
possible potential practical precise present previous primary prior
productive professional prominent psychological public radical random
rapid rare rational ready real recent related relevant remarkable rich
right scientific short significant similar simple singular small social
specific spontaneous standard statistical strong subconscious subjective
substantial subtle successful sufficient suitable surprising systematic
technical theoretical thorough traditional true uncertain unconscious
unexpected unique universal unpredictable unusual useful valid valuable
various verbal visual whole wide
""".split()

_ADVERBS = """
abroad accordingly actively actually again ago almost alone already
also altogether always anyway apparently approximately arguably away
carefully clearly closely collectively commonly completely consciously
consequently considerably consistently constantly conversely correctly
deliberately differently directly easily effectively entirely equally
especially essentially even eventually exactly explicitly extremely
fairly far fast finally flexibly forward free freely frequently fully
further generally gradually greatly hard hardly highly immediately
independently indeed indirectly individually inevitably initially
instead intentionally jointly just largely lately later least less
likewise literally mainly maybe merely mostly mutually namely naturally
nearly necessarily never newly normally notably often only openly
originally overall particularly partly perfectly perhaps possibly
potentially precisely previously primarily probably promptly purposely
quickly quite radically randomly rapidly rarely rather readily really
recently regularly relatively repeatedly rightly roughly separately
significantly similarly simply slightly slowly socially solely somehow
sometimes somewhat soon specifically spontaneously statistically still
strongly subsequently substantially successfully suddenly sufficiently
surprisingly systematically together too typically ultimately uniquely
usefully usually very well widely
""".split()

for _w in _NOUNS:
    POS_LEXICON[_w] = "N"
for _w in _VERBS:
    POS_LEXICON.setdefault(_w, "V")
for _w in _ADJECTIVES:
    POS_LEXICON.setdefault(_w, "J")
for _w in _ADVERBS:
    POS_LEXICON.setdefault(_w, "R")

# Common nominal -ing forms and other forms whose primary tag differs
# from what the suffix heuristics would guess.
POS_LEXICON.update({
    "thinking": "N",
    "learning": "N",
    "understanding": "N",
    "meaning": "N",
    "feeling": "N",
    "finding": "N",
    "testing": "N",
    "training": "N",
    "thought": "N",
    "early": "J",
    "likely": "J",
    "only": "J",
    "daily": "J",
    "supply": "V",
    "apply": "V",
    "reply": "V",
    "imply": "V",
    "rely": "V",
})

# Irregular inflections, keyed by (form, tag of the form).
IRREGULAR_LEMMAS: dict[tuple[str, str], str] = {
    ("thought", "V"): "think",
    ("thoughts", "N"): "thought",
    ("made", "V"): "make",
    ("found", "V"): "find",
    ("gave", "V"): "give",
    ("given", "V"): "give",
    ("took", "V"): "take",
    ("taken", "V"): "take",
    ("saw", "V"): "see",
    ("seen", "V"): "see",
    ("drew", "V"): "draw",
    ("drawn", "V"): "draw",
    ("wrote", "V"): "write",
    ("written", "V"): "write",
    ("held", "V"): "hold",
    ("brought", "V"): "bring",
    ("built", "V"): "build",
    ("chose", "V"): "choose",
    ("chosen", "V"): "choose",
    ("grew", "V"): "grow",
    ("grown", "V"): "grow",
    ("knew", "V"): "know",
    ("known", "V"): "know",
    ("led", "V"): "lead",
    ("meant", "V"): "mean",
    ("ran", "V"): "run",
    ("said", "V"): "say",
    ("shown", "V"): "show",
    ("showed", "V"): "show",
    ("sought", "V"): "seek",
    ("spoke", "V"): "speak",
    ("spoken", "V"): "speak",
    ("understood", "V"): "understand",
    ("went", "V"): "go",
    ("gone", "V"): "go",
    ("kept", "V"): "keep",
    ("left", "V"): "leave",
    ("lost", "V"): "lose",
    ("paid", "V"): "pay",
    ("felt", "V"): "feel",
    ("dealt", "V"): "deal",
    ("analyses", "N"): "analysis",
    ("hypotheses", "N"): "hypothesis",
    ("criteria", "N"): "criterion",
    ("phenomena", "N"): "phenomenon",
    ("theses", "N"): "thesis",
    ("bases", "N"): "basis",
    ("indices", "N"): "index",
    ("matrices", "N"): "matrix",
    ("corpora", "N"): "corpus",
    ("media", "N"): "medium",
    ("data", "N"): "data",
    ("children", "N"): "child",
    ("men", "N"): "man",
    ("women", "N"): "woman",
    ("people", "N"): "people",
    ("lives", "N"): "life",
    ("feet", "N"): "foot",
    ("series", "N"): "series",
    ("species", "N"): "species",
    ("better", "J"): "good",
    ("best", "J"): "good",
    ("worse", "J"): "bad",
    ("worst", "J"): "bad",
    ("further", "J"): "far",
    ("less", "J"): "little",
    ("better", "R"): "well",
    ("best", "R"): "well",
}

# Lemma forms the suffix lemmatizer may check membership against.
KNOWN_WORDS = frozenset(POS_LEXICON) | frozenset(IRREGULAR_LEMMAS.values())
