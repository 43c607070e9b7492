"""Writes corpus_50.jsonl and corpus_50_truth.json.

Each document is assembled from sentences whose abbreviation verdicts are known
by construction, so the funnel counts in the truth file are counted here, not
computed by the pipeline under test.
"""
import json
from pathlib import Path

HERE = Path(__file__).resolve().parent

FILLER = [
    "The survey was conducted in three regions and the responses were coded by two independent readers.",
    "We compare the results with those of earlier studies and discuss the limits of the approach.",
    "Most of the respondents reported that the policy had changed their daily routines in the last year.",
    "The sample is drawn from a national register and is weighted to match the census.",
    "In the second part of the paper we turn to the qualitative interviews and their themes.",
    "These findings are consistent with the view that institutions shape the choices of households.",
    "All models include controls for age, gender and the level of education of the respondent.",
    "The analysis was repeated with a smaller sample and the main effects did not change.",
    "Teachers in rural schools were more likely to report a lack of resources than their urban peers.",
    "We thank the participants for their time and the editors for their comments on an earlier draft.",
]

# (sentence, verdict) with exactly one parenthesized short form per sentence.
GENUINE = [
    ("We train a convolutional neural network (CNN) on the coded responses.", "GenuineOrdered"),
    ("The model is estimated with structural equation modeling (SEM) in two steps.", "GenuineOrdered"),
    ("Growth is measured as the change in gross domestic product (GDP) per capita.", "GenuineOrdered"),
    ("Data on vaccination come from the World Health Organization (WHO) for each country.", "GenuineOrdered"),
    ("Member states of the European Union (EU) are treated as a single group.", "GenuineOrdered"),
    ("Teachers differ in their pedagogical content knowledge (PCK) across subjects.", "GenuineOrdered"),
    ("Several non-governmental organizations (NGOs) ran the local programmes.", "GenuineOrdered"),
    ("Reports by the Centers for Disease Control and Prevention (CDC) were used as a baseline.", "GenuineOrdered"),
    ("We also use principal component analysis (PCA) to reduce the item battery.", "GenuineOrdered"),
    ("Firms report on corporate social responsibility (CSR) in their annual filings.", "GenuineOrdered"),
    ("The team visited the National Centre for Scientific Research (CNRS) in Paris.", "GenuinePermuted"),
    ("The Hypothesis of Rational Expectations (REH) is a common benchmark in this literature.", "GenuinePermuted"),
    ("The project was funded by the German Research Foundation (DFG) for three years.", "Allowlisted"),
]

TORTURED = [
    ("Teachers differ in their academic substantive information (PCK) across subjects.", "TorturedKnown"),
    ("Several non-administrative associations (NGOs) ran the local programmes.", "TorturedKnown"),
    ("Reports by the Communities for Infectious Prevention and Anticipation (CDC) were used as a baseline.", "TorturedKnown"),
    ("Recent progress in counterfeit consciousness (AI) has changed the field.", "TorturedKnown"),
    ("We also use head part examination (PCA) to reduce the item battery.", "TorturedKnown"),
    ("Classification relies on a bolster vector machine (SVM) with a linear kernel.", "TorturedKnown"),
    ("Growth is measured as the change in gross household item (GDP) per capita.", "TorturedKnown"),
    ("The estimates come from auxiliary condition displaying (SEM) with robust errors.", "TorturedKnown"),
    ("Field notes were coded with the anthropological fieldwork inquiry (AFQ) scheme.", "SuspectUnknown"),
    ("The villages joined the regional solidarity mechanism (VKT) after the reform.", "SuspectUnknown"),
]

# Parentheses that are not abbreviation candidates.
NON_CANDIDATE = [
    "The effect is small but robust (see Figure 2) across all specifications.",
    "This pattern was first described in an earlier wave of the study (2019).",
    "The difference is significant at the usual level (p < 0.05) in both groups.",
    "Each item uses a five point scale (a) for agreement and (b) for importance.",
]

TABLE1_DOC = (
    "Teachers differ in their academic substantive information (PCK) across subjects. "
    "Several non-administrative associations (NGOs) ran the local programmes. "
    "Reports by the Communities for Infectious Prevention and Anticipation (CDC) were used as a baseline. "
    "Observers stressed the uprightness of the votes in every district. "
    "Cases of trickery in conduct were reported to the commission. "
    "The geological locale of each school was recorded by the survey team. "
    + " ".join(FILLER[:3])
)

GERMAN = [
    "Die Ergebnisse der Studie zeigen, dass die sozialen Netzwerke und die Bildung in der Region eine wichtige Rolle spielen.",
    "Wir haben die Daten mit dem Verfahren der Deutschen Forschungsgemeinschaft (DFG) erhoben und ausgewertet.",
    "Die Befragung wurde von der Universität und dem Institut für Soziologie durchgeführt.",
    "Es ist nicht klar, ob die Unterschiede zwischen den Gruppen auf die Schule oder auf die Familie zurückgehen.",
]
FRENCH = [
    "Les résultats de cette étude montrent que les réseaux sociaux et l'éducation dans la région jouent un rôle important.",
    "Le Centre national de la recherche scientifique (CNRS) a financé une partie de la collecte des données.",
    "Nous avons comparé les réponses des enseignants et des parents dans les écoles de la ville.",
]
SPANISH = [
    "Los resultados del estudio muestran que las redes sociales y la educación en la región tienen un papel importante.",
    "Los datos fueron recogidos por el Consejo Superior de Investigaciones Científicas (CSIC) en el año de la reforma.",
    "Las diferencias entre los grupos no son grandes y se explican por el nivel de educación de los padres.",
]


def filler(i, n=4):
    return [FILLER[(i + k) % len(FILLER)] for k in range(n)]


def main():
    docs = []
    truth_docs = {}

    def add(doc_id, body, language=None, verdicts=(), english=True, **extra):
        rec = {"id": doc_id, "title": f"Fixture {doc_id}", "body": body}
        if language:
            rec["language"] = language
        rec.update(extra)
        docs.append(rec)
        truth_docs[doc_id] = {"english": english, "verdicts": list(verdicts)}

    # Planted Table 1 document.
    add("en-table1", TABLE1_DOC, verdicts=["TorturedKnown"] * 3, venue="Fixture Review", year=2021)

    # Nine more documents with at least one tortured candidate.
    for i in range(9):
        t_sent, t_verdict = TORTURED[3 + (i % 7)] if i < 7 else TORTURED[8 + (i - 7)]
        sents = filler(i, 3)
        verdicts = [t_verdict]
        sents.insert(1, t_sent)
        if i % 3 == 0:
            g_sent, g_verdict = GENUINE[i % len(GENUINE)]
            sents.append(g_sent)
            verdicts.append(g_verdict)
        if i == 4:
            t2, v2 = TORTURED[i % 3]
            sents.append(t2)
            verdicts.append(v2)
        add(f"en-tortured-{i:02d}", " ".join(sents), verdicts=verdicts)

    # Eighteen documents whose abbreviations are all genuine or exempt.
    for i in range(18):
        sents = filler(i + 2, 4)
        verdicts = []
        for k in range(1 + i % 3):
            g_sent, g_verdict = GENUINE[(i + 5 * k) % len(GENUINE)]
            sents.insert(1 + k, g_sent)
            verdicts.append(g_verdict)
        extra = {"language": "en"} if i == 0 else {}
        add(f"en-genuine-{i:02d}", " ".join(sents), verdicts=verdicts, **extra)

    # Twelve English documents without abbreviation candidates.
    for i in range(12):
        sents = filler(i + 5, 4)
        if i % 2 == 0:
            sents.insert(2, NON_CANDIDATE[(i // 2) % len(NON_CANDIDATE)])
        add(f"en-plain-{i:02d}", " ".join(sents))

    # Ten documents in other languages; their abbreviations never reach the funnel.
    for i in range(5):
        body = " ".join(GERMAN[(i + k) % len(GERMAN)] for k in range(3))
        add(f"de-{i:02d}", body, language="de" if i < 2 else None, english=False)
    for i in range(3):
        add(f"fr-{i:02d}", " ".join(FRENCH[(i + k) % len(FRENCH)] for k in range(3)), english=False)
    for i in range(2):
        add(f"es-{i:02d}", " ".join(SPANISH[(i + k) % len(SPANISH)] for k in range(3)), english=False)

    tortured = {"TorturedKnown", "SuspectUnknown"}
    english = [d for d in truth_docs.values() if d["english"]]
    funnel = {
        "total_docs": len(truth_docs),
        "english_docs": len(english),
        "docs_with_abbrevs": sum(1 for d in english if d["verdicts"]),
        "docs_with_tortured_candidates": sum(1 for d in english if tortured & set(d["verdicts"])),
        "abbrev_occurrences": sum(len(d["verdicts"]) for d in english),
        "tortured_candidate_occurrences": sum(sum(v in tortured for v in d["verdicts"]) for d in english),
        "validated_false_positives": 0,
    }

    with open(HERE / "corpus_50.jsonl", "w", encoding="utf-8") as f:
        for rec in docs:
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")
    with open(HERE / "corpus_50_truth.json", "w", encoding="utf-8") as f:
        json.dump({"funnel": funnel, "documents": truth_docs, "planted_table1": "en-table1"}, f, indent=2, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main()
