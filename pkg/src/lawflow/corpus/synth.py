"""Seeded synthetic contract corpus with a ground-truth manifest.

Each family is one master custody agreement plus 0..5 amendments that share
parties and reference the master's effective date. Bodies instantiate all 20
clause archetypes with paraphrase variants; headings render in one of five
styles; durations appear as digits, number words, or parenthesized dual forms.
Everything is a pure function of the seed.

The generator builds plain text by joining paragraphs and renders markup
separately from the same structure, so normalize_markup(raw) == plain_text is
a real check, not a tautology.
"""

from __future__ import annotations

import datetime as _dt
import html
from dataclasses import dataclass
from random import Random

from ..extraction.dates import CalendarDate
from ..extraction.parties import normalize_name, similarity
from ..multihop import calendar_add
from .types import CLAUSE_LABELS, ContractDoc, CorpusManifest, FamilyRecord

HEADING_STYLES = ("numbered", "section", "article", "allcaps", "titlecase")

_BRAND_HEADS = ["North", "South", "East", "West", "High", "Bright", "Stone", "Oak",
                "Elm", "Maple", "Cedar", "Birch", "River", "Lake", "Hill", "Glen",
                "Fair", "Clear", "Silver", "Golden"]
_BRAND_TAILS = ["gate", "field", "brook", "wood", "haven", "ridge", "crest", "view",
                "mont", "port", "bridge", "shire", "land", "ford", "dale", "burn",
                "cliff", "marsh", "hollow", "point"]
_STRATEGIES = ["Core", "Select", "Dynamic", "Strategic", "Global", "International",
               "Domestic", "Diversified", "Balanced", "Premier"]
_ASSET_CLASSES = ["Equity Income", "Growth", "Value", "Bond", "Municipal Income",
                  "Small Cap", "Mid Cap", "Large Cap", "Emerging Markets", "Real Return"]
_TRUST_FORMS = ["{brand} Investment Trust", "{brand} Series Trust", "{brand} Funds Trust"]

CUSTODIAN_POOL = [
    "State Street Bank and Trust Company",
    "The Bank of New York Mellon",
    "Northern Trust Company",
    "Brown Brothers Harriman & Co.",
    "Citibank, N.A.",
    "Continental Fiduciary Bank, N.A.",
    "First Meridian Custody Bank",
    "Pacific Coast Trust Company",
]

_STATES = ["New York", "Massachusetts", "Delaware", "Ohio", "Illinois",
           "California", "Pennsylvania", "Maryland"]

FLAGSHIP_FUND = "BNY Mellon International Equity Income Fund"
FLAGSHIP_TRUST = "BNY Mellon Investment Trust"

_MONTH_NAMES = ["January", "February", "March", "April", "May", "June", "July",
                "August", "September", "October", "November", "December"]

_ONES_WORDS = ["zero", "one", "two", "three", "four", "five", "six", "seven", "eight",
               "nine", "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen",
               "sixteen", "seventeen", "eighteen", "nineteen", "twenty"]
_TENS_WORDS = {20: "twenty", 30: "thirty", 40: "forty", 50: "fifty", 60: "sixty",
               70: "seventy", 80: "eighty", 90: "ninety"}


def number_word(n: int) -> str:
    if n <= 20:
        return _ONES_WORDS[n]
    tens, ones = divmod(n, 10)
    word = _TENS_WORDS[tens * 10]
    return f"{word}-{_ONES_WORDS[ones]}" if ones else word


def render_date(date: CalendarDate, form: str) -> str:
    month = _MONTH_NAMES[date.month - 1]
    if form == "month_first":
        return f"{month} {date.day}, {date.year}"
    if form == "day_of":
        suffix = {1: "st", 2: "nd", 3: "rd"}.get(date.day % 10 if date.day not in (11, 12, 13) else 0, "th")
        return f"{date.day}{suffix} day of {month}, {date.year}"
    if form == "day_first":
        return f"{date.day} {month} {date.year}"
    if form == "slash":
        return f"{date.day:02d}/{date.month:02d}/{date.year}"
    raise ValueError(form)


# --------------------------------------------------------------------------
# Clause templates. Each label has paraphrase variants; slots are filled per
# contract. Bodies outside "termination" deliberately avoid duration phrases
# and date literals so lifecycle and date extraction stay single-sourced.
# --------------------------------------------------------------------------

CLAUSE_TEMPLATES: dict[str, list[str]] = {
    "account transactions": [
        "The Custodian shall settle purchases and sales of securities for the account of "
        "{fund} upon receipt of Proper Instructions, crediting and debiting the account "
        "accordingly. All transactions in the account shall be recorded promptly, and the "
        "Custodian shall furnish {fund} with transaction statements identifying each purchase, "
        "sale, receipt and delivery of securities and cash.",
        "All purchases, sales, deliveries and other transactions in securities for the account "
        "shall be settled by the Custodian in accordance with customary market practice. The "
        "Custodian shall debit or credit the account of {fund} for each transaction and shall "
        "render periodic statements of all account activity.",
    ],
    "authorized persons": [
        "{fund} shall furnish the Custodian with a written certificate identifying each officer "
        "or agent authorized to give Proper Instructions on its behalf. The Custodian may rely "
        "upon the authority of such authorized persons until it receives written notice that a "
        "person is no longer authorized, and specimen signatures of all authorized persons shall "
        "be provided to the Custodian.",
        "The officers and agents of {fund} designated in a certificate delivered to the Custodian "
        "shall be the persons authorized to act on behalf of {fund} hereunder. Any change in the "
        "authorized persons shall be communicated to the Custodian in a writing signed by an "
        "officer, together with specimen signatures of any newly designated persons.",
    ],
    "definitions": [
        "As used in this Agreement, the following terms shall have the meanings set forth below. "
        "\"Securities\" means stocks, bonds, debentures, notes and other instruments of every "
        "kind held for the account. \"Proper Instructions\" means instructions delivered by an "
        "authorized person in the manner permitted hereunder. \"Business Day\" means any day on "
        "which the Custodian is open for business.",
        "For purposes of this Agreement the terms defined in this section shall have the meanings "
        "assigned to them herein. \"Account\" means the custody account maintained for {fund}; "
        "\"Depository\" means any securities depository or clearing agency in which the Custodian "
        "maintains securities; and \"Instructions\" means directions given by an authorized "
        "person as provided herein.",
    ],
    "duties and responsibilities": [
        "The Custodian shall perform the duties and responsibilities set forth in this Agreement, "
        "including the safekeeping of all cash and securities delivered to it for the account of "
        "{fund}, the collection of income, and the performance of such other obligations as are "
        "expressly undertaken herein. The Custodian shall have no duties or responsibilities "
        "other than those expressly stated.",
        "The duties of the Custodian hereunder shall include holding in safekeeping the assets of "
        "{fund}, collecting dividends and interest, and discharging the further responsibilities "
        "and obligations expressly set forth in this Agreement. No implied duties or obligations "
        "shall be read into this Agreement against the Custodian.",
    ],
    "evidence of authority": [
        "The Custodian may rely upon, and shall be protected in acting upon, any certificate, "
        "resolution of the board, instrument or other evidence of authority reasonably believed "
        "by it to be genuine and to have been signed by an authorized person of {fund}. The "
        "Custodian may request such further evidence of authority as it reasonably deems "
        "necessary.",
        "Any certificate, secretary's resolution or other writing furnished to the Custodian as "
        "evidence of authority to act for {fund} may be relied upon by the Custodian as "
        "conclusive proof of the matters stated therein, and the Custodian shall incur no "
        "liability for acting upon such evidence of authority in good faith.",
    ],
    "fee schedule": [
        "For the services rendered hereunder the Custodian shall be entitled to an annual custody "
        "fee of {fee_amount}, payable in arrears, together with an asset-based rate of "
        "{fee_bp} basis points on average net assets, all as set forth in the fee schedule "
        "attached hereto as Schedule A. The fee schedule may be revised by written agreement of "
        "the parties.",
        "The compensation of the Custodian for its services shall be the annual fee of "
        "{fee_amount} plus {fee_bp} basis points of the average net assets of {fund}, as stated "
        "in the schedule of fees annexed as Schedule A, which rate and fee shall remain in effect "
        "unless revised by mutual written consent.",
    ],
    "fees and expenses": [
        "In addition to the compensation provided for above, {fund} shall reimburse the Custodian "
        "for all reasonable out-of-pocket expenses incurred in the performance of its duties, "
        "including transfer taxes, wire charges, registration charges and courier costs. All "
        "such fees and expenses shall be payable upon presentation of an invoice.",
        "{fund} agrees to pay all expenses, charges and disbursements reasonably incurred by the "
        "Custodian hereunder, including stamp duties, cable and wire fees, and the costs of any "
        "registrar. Reimbursable expenses shall be itemized and invoiced to {fund} and shall be "
        "payable promptly upon receipt of the invoice.",
    ],
    "foreign custodian and subcustodian": [
        "The Custodian may appoint one or more eligible foreign custodians or foreign "
        "subcustodians to hold securities and cash of {fund} outside the United States, provided "
        "each such foreign custodian satisfies the eligibility requirements of applicable law. "
        "The Custodian shall exercise reasonable oversight of each foreign subcustodian so "
        "appointed.",
        "Assets of {fund} held outside the United States may be maintained with an eligible "
        "foreign custodian or foreign subcustodian appointed by the Custodian. The Custodian "
        "shall monitor the continued eligibility of each overseas custodian and shall replace "
        "any foreign subcustodian that ceases to satisfy the applicable requirements.",
    ],
    "governing law": [
        "This Agreement shall be governed by and construed in accordance with the laws of the "
        "State of {state}, without regard to its conflicts of law principles, and the parties "
        "submit to the exclusive jurisdiction of the courts sitting in that State.",
        "The validity, interpretation and performance of this Agreement shall be governed by the "
        "internal laws of the State of {state}. Any proceeding arising out of this Agreement "
        "shall be brought exclusively in the state or federal courts located in the State of "
        "{state}, and each party consents to the jurisdiction of such courts.",
    ],
    "indemnification": [
        "{fund} shall indemnify and hold harmless the Custodian from and against any and all "
        "losses, claims, damages, liabilities and expenses, including reasonable counsel fees, "
        "arising out of the performance of this Agreement, except such as result from the "
        "Custodian's own negligence or willful misconduct. This indemnity shall survive the "
        "termination of this Agreement.",
        "The Custodian shall be indemnified and held harmless by {fund} against all claims, "
        "losses, damages and liabilities asserted against the Custodian in connection with its "
        "services hereunder, other than those attributable to the Custodian's negligence or bad "
        "faith, and such indemnification obligations shall survive any expiration of this "
        "Agreement.",
    ],
    "instructions": [
        "The Custodian shall act only upon Proper Instructions received from an authorized "
        "person of {fund}. Instructions may be given in writing, by facsimile or by such "
        "electronic transmission as the parties agree, and shall be deemed effective when "
        "actually received by the Custodian. The Custodian may seek clarification of any "
        "instructions it reasonably believes to be ambiguous.",
        "All directions to the Custodian concerning the account shall constitute Proper "
        "Instructions only if given by an authorized person in writing or by an agreed "
        "electronic method. The Custodian shall be entitled to refuse to act upon instructions "
        "it reasonably doubts to be genuine, pending confirmation from {fund}.",
    ],
    "limitations and scope of use or liability": [
        "The Custodian's liability under this Agreement shall be limited to direct damages "
        "caused by its own failure to exercise the required standard of care, and in no event "
        "shall the Custodian be liable for special, indirect, punitive or consequential damages, "
        "or for any loss arising from causes beyond its reasonable control. The scope of the "
        "Custodian's undertaking is limited to the services expressly described herein.",
        "In no event shall the liability of the Custodian exceed direct money damages, and the "
        "Custodian shall have no liability for indirect, incidental or consequential losses of "
        "{fund}, nor for delays or failures of performance resulting from acts of God, war, or "
        "other causes beyond the Custodian's reasonable control. The limitations in this section "
        "define the entire scope of the Custodian's liability.",
    ],
    "miscellaneous": [
        "This Agreement constitutes the entire agreement of the parties with respect to its "
        "subject matter and supersedes all prior understandings. It may be executed in any "
        "number of counterparts, each of which shall be deemed an original. Notices hereunder "
        "shall be in writing and delivered to the addresses of record. If any provision is held "
        "invalid, the remaining provisions shall continue in full force, and no waiver of any "
        "provision shall be effective unless in writing.",
        "This instrument embodies the entire understanding between the parties, may be signed in "
        "counterparts, and shall be binding upon permitted successors and assigns. All notices "
        "shall be given in writing to the parties at their respective addresses of record. The "
        "invalidity of any provision shall not affect the severability of the remainder, and "
        "failure to enforce a provision shall not operate as a waiver.",
    ],
    "nominees": [
        "Securities of {fund} held hereunder may be registered in the name of the Custodian's "
        "nominee or the nominee of any securities depository, and {fund} agrees to hold the "
        "nominee harmless from any liability as holder of record. The Custodian shall maintain "
        "records identifying all securities registered in nominee name as belonging to {fund}.",
        "The Custodian is authorized to register securities in the name of one or more nominees "
        "selected by it, and all securities so registered in nominee name shall at all times be "
        "identified on the books of the Custodian as the property of {fund}.",
    ],
    "proprietary information": [
        "Each party shall keep confidential all proprietary information of the other party "
        "received in connection with this Agreement and shall not disclose such confidential "
        "information to any third party except as required by law or regulation. Proprietary "
        "information shall not include information that is or becomes publicly available without "
        "breach of this section.",
        "All records, data and other proprietary information exchanged under this Agreement "
        "shall be maintained in confidence, shall be used solely for the performance of this "
        "Agreement, and shall not be disclosed by the receiving party without the prior written "
        "consent of the disclosing party except as compelled by legal process.",
    ],
    "recitals": [],  # rendered specially in the preamble
    "standard of care liabilities": [
        "In performing its duties hereunder the Custodian shall exercise reasonable care, "
        "prudence and diligence, and in no case less than the standard of care customarily "
        "exercised by professional custodians of registered investment companies. The Custodian "
        "shall be liable for losses resulting from its own negligence, gross negligence or "
        "willful misconduct, and for no other losses.",
        "The Custodian agrees to exercise the care, prudence and diligence of a professional "
        "custodian, and shall be responsible to {fund} only for losses occasioned by its own "
        "negligence or willful misconduct in the performance of the applicable standard of care. "
        "The Custodian shall not be liable for any loss occurring absent such negligence or "
        "misconduct.",
    ],
    "subcustodians and securities depositories": [
        "The Custodian may deposit securities of {fund} with any securities depository or "
        "clearing corporation, and may appoint domestic subcustodians to hold assets, provided "
        "the Custodian remains responsible for the acts of each subcustodian so appointed. "
        "Securities held in a depository shall be held subject to the rules of such depository.",
        "Securities may be maintained by the Custodian in a clearing agency or securities "
        "depository, or with a subcustodian appointed hereunder, and deposits with any such "
        "depository shall be evidenced on the books and records of the Custodian. The Custodian "
        "shall exercise due care in the selection and monitoring of each subcustodian and "
        "depository.",
    ],
    "successor custodian": [
        "Upon any termination of this Agreement, {fund} shall designate a successor custodian by "
        "Proper Instructions, and the Custodian shall deliver the assets of the account to the "
        "successor custodian so designated. If no successor custodian is designated, the "
        "Custodian may deliver the assets to a bank of its selection or apply to a court for "
        "instructions regarding the transfer.",
        "If this Agreement is terminated, the Custodian shall, upon receipt of Proper "
        "Instructions designating a successor custodian, transfer and deliver all cash and "
        "securities held hereunder to such successor custodian, and pending such designation the "
        "Custodian shall continue to hold the assets with the same standard of care as a "
        "successor would owe.",
    ],
    "termination": [],  # rendered per lifecycle variant below
}

_TERMINATION_DURATION = [
    "This Agreement shall remain in effect for an initial term of {duration} from the Effective "
    "Date. Thereafter, either party may terminate this Agreement upon reasonable prior written "
    "notice to the other party, and the provisions hereof governing outstanding transactions "
    "shall survive until settled.",
    "The initial term of this Agreement shall be {duration} commencing on the Effective Date, "
    "after which the Agreement shall continue unless and until terminated by either party upon "
    "reasonable prior written notice delivered to the other.",
]
_TERMINATION_EXPLICIT = [
    "This Agreement shall terminate on {explicit_date}, unless the parties agree in writing to "
    "an earlier termination. Upon termination the Custodian shall deliver the assets as directed "
    "by Proper Instructions.",
    "Unless sooner terminated by mutual written consent, this Agreement shall remain in effect "
    "until {explicit_date} and shall expire on that date without further action of the parties.",
]
_TERMINATION_EVERGREEN = [
    "This Agreement shall remain in full force and effect until terminated by either party upon "
    "reasonable prior written notice to the other, and shall continue from year to year unless "
    "and until so terminated.",
    "This Agreement has no fixed term and shall continue in effect until terminated by either "
    "party by written notice delivered to the other, whereupon the obligations of the parties "
    "shall cease except as to matters then outstanding.",
]

# Decoy headings exercise the lexicon path of the labeler (no alias entry).
_DECOY_HEADINGS = {
    "indemnification": "Protection and Recovery",
    "standard of care liabilities": "Care of Assets",
    "instructions": "Directions to the Custodian",
    "fees and expenses": "Charges and Disbursements",
    "authorized persons": "Designated Officers",
}

_ROMAN = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII",
          "XIII", "XIV", "XV", "XVI", "XVII", "XVIII", "XIX", "XX", "XXI", "XXII"]


def _title_case(label: str) -> str:
    small = {"and", "of", "or", "the", "to", "in", "on", "for", "a", "an"}
    words = label.split()
    out = [w if (w in small and i > 0) else w.capitalize() for i, w in enumerate(words)]
    return " ".join(out)


def render_heading(style: str, index: int, title: str) -> str:
    if style == "numbered":
        return f"{index}. {title.upper()}"
    if style == "section":
        return f"Section {index}. {_title_case(title)}"
    if style == "article":
        return f"ARTICLE {_ROMAN[index - 1]} {title.upper()}"
    if style == "allcaps":
        return title.upper()
    if style == "titlecase":
        return _title_case(title)
    raise ValueError(style)


@dataclass
class _Party:
    name: str
    role: str


def _random_date(rng: Random, year_lo: int = 1998, year_hi: int = 2018) -> CalendarDate:
    year = rng.randint(year_lo, year_hi)
    month = rng.randint(1, 12)
    day = rng.randint(1, 28) if rng.random() < 0.85 else rng.randint(28, 31)
    while True:
        try:
            return CalendarDate(year, month, day)
        except ValueError:
            day -= 1


def _date_form(rng: Random, date: CalendarDate) -> str:
    forms = ["month_first", "month_first", "day_of", "day_first"]
    if date.day > 12:
        forms.append("slash")
    return rng.choice(forms)


class CorpusGenerator:
    def __init__(self, seed: int, style_mix: dict[str, float] | None = None):
        self.seed = seed
        self.rng = Random(seed)
        mix = style_mix or {s: 1.0 for s in HEADING_STYLES}
        unknown = set(mix) - set(HEADING_STYLES)
        if unknown:
            raise ValueError(f"unknown heading styles: {sorted(unknown)}")
        self._styles = sorted(mix)
        self._weights = [mix[s] for s in self._styles]
        self._used_names: list[str] = []
        self._used_brands: set[str] = set()

    # -- name supply --------------------------------------------------------

    def _fresh_name(self, maker) -> str:
        for _ in range(200):
            name = maker()
            norm = normalize_name(name)
            if all(similarity(norm, normalize_name(u)) < 0.88 for u in self._used_names):
                self._used_names.append(name)
                return name
        raise RuntimeError("name pool exhausted")

    def _fund_name(self, brand: str) -> str:
        return self._fresh_name(
            lambda: f"{brand} {self.rng.choice(_STRATEGIES)} {self.rng.choice(_ASSET_CLASSES)} Fund"
        )

    def _trust_name(self, brand: str) -> str:
        try:
            return self._fresh_name(lambda: self.rng.choice(_TRUST_FORMS).format(brand=brand))
        except RuntimeError:
            # every form of this brand collides with a sound-alike family;
            # umbrella trusts under a brand of their own are common enough
            return self._fresh_name(
                lambda: self.rng.choice(_TRUST_FORMS).format(brand=self._mint_brand()))

    def _mint_brand(self) -> str:
        return f"{self.rng.choice(_BRAND_HEADS)}{self.rng.choice(_BRAND_TAILS).lower()}"

    def _brand(self) -> str:
        # one brand per family, else same-name trusts collide outright
        for _ in range(1000):
            brand = self._mint_brand()
            if brand not in self._used_brands:
                self._used_brands.add(brand)
                return brand
        raise RuntimeError("brand pool exhausted")

    # -- document assembly --------------------------------------------------

    def _preamble(self, kind: str, number: int, parties: list[_Party], rng: Random,
                  effective: CalendarDate, dated: CalendarDate,
                  master_date: CalendarDate | None) -> tuple[str, list[str]]:
        """Return (title_line, body paragraphs) for the recitals span."""
        fund = next(p.name for p in parties if p.role == "fund")
        custodian = next(p.name for p in parties if p.role == "custodian")
        trust = next((p.name for p in parties if p.role == "trust"), None)

        if kind == "master":
            title = "CUSTODY AGREEMENT"
            head = "THIS CUSTODY AGREEMENT (this \"Agreement\")"
        else:
            title = f"AMENDMENT NO. {number} TO CUSTODY AGREEMENT"
            head = f"THIS AMENDMENT NO. {number} TO CUSTODY AGREEMENT (this \"Amendment\")"

        between = f"{fund} (the \"Fund\")"
        if trust:
            between += f", {trust} (the \"Trust\")"
        between += f", and {custodian} (the \"Custodian\")"

        made = (f"{head} is made and entered into this "
                f"{render_date(dated, 'day_of')}, by and between {between}.")

        paragraphs = [made]
        if kind == "master":
            paragraphs.append(
                f"WHEREAS, the Fund desires to retain the Custodian to act as custodian of its "
                f"assets, and the Custodian is willing to furnish custody services upon the terms "
                f"set forth herein; NOW, THEREFORE, in consideration of the mutual covenants "
                f"contained herein, the parties agree as follows."
            )
        else:
            ref_form = _date_form(rng, master_date)
            paragraphs.append(
                f"WHEREAS, the Fund and the Custodian are parties to the Custody Agreement dated "
                f"{render_date(master_date, ref_form)} (the \"Agreement\"), and the parties now "
                f"desire to amend the Agreement as set forth below."
            )
        eff_form = rng.choice(["month_first", "day_of"])
        subject = "Agreement" if kind == "master" else "Amendment"
        paragraphs.append(
            f"This {subject} shall become effective as of {render_date(effective, eff_form)} "
            f"(the \"Effective Date\")."
        )
        return title, paragraphs

    def _termination_body(self, rng: Random, variant: str, effective: CalendarDate,
                          duration: tuple[int, str] | None) -> tuple[str, CalendarDate | None]:
        if variant == "evergreen":
            return rng.choice(_TERMINATION_EVERGREEN), None
        count, unit = duration
        termination = calendar_add(effective, count, unit)
        if variant == "explicit":
            template = rng.choice(_TERMINATION_EXPLICIT)
            body = template.format(explicit_date=render_date(termination, "month_first"))
            return body, termination
        # Word and dual renderings only exist below 100; larger day counts
        # stay numeric ("180 days").
        forms = ["digit"] if count > 99 else ["digit", "word", "dual"]
        form = rng.choice(forms)
        unit_word = unit if count != 1 else unit[:-1]
        if form == "digit":
            phrase = f"{count} {unit_word}"
        elif form == "word":
            phrase = f"{number_word(count)} {unit_word}"
        else:
            phrase = f"{number_word(count)} ({count}) {unit_word}"
        body = rng.choice(_TERMINATION_DURATION).format(duration=phrase)
        return body, termination

    def _clause_body(self, rng: Random, label: str, slots: dict) -> str:
        template = rng.choice(CLAUSE_TEMPLATES[label])
        return template.format(**slots)

    def _build_contract(self, contract_id: str, kind: str, number: int,
                        parties: list[_Party], effective: CalendarDate,
                        dated: CalendarDate, master_date: CalendarDate | None,
                        labels: list[str], style: str, rng: Random,
                        lifecycle: tuple[str, tuple[int, str] | None]) -> dict:
        fund = next(p.name for p in parties if p.role == "fund")
        slots = {
            "fund": "the Fund" if rng.random() < 0.5 else fund,
            "state": rng.choice(_STATES),
            "fee_amount": f"${rng.randrange(40, 400) * 500:,}",
            "fee_bp": str(rng.randrange(2, 9)),
        }

        title, preamble_paras = self._preamble(kind, number, parties, rng,
                                               effective, dated, master_date)
        paragraphs: list[tuple[str, str]] = [("title", title)]
        paragraphs += [("body", p) for p in preamble_paras]
        section_headings = [title]
        section_labels = ["recitals"]

        variant, duration = lifecycle
        termination_date: CalendarDate | None = None
        heading_index = 0
        for label in labels:
            heading_index += 1
            decoy = _DECOY_HEADINGS.get(label)
            if decoy is not None and rng.random() < 0.08:
                heading_title = decoy
            else:
                heading_title = label
            heading = render_heading(style, heading_index, heading_title)
            if kind == "amendment":
                intro = (f"The Agreement is hereby amended by restating the section concerning "
                         f"{label} in its entirety as follows.")
            else:
                intro = None
            if label == "termination":
                body, termination_date = self._termination_body(rng, variant, effective, duration)
            else:
                body = self._clause_body(rng, label, slots)
            paragraphs.append(("heading", heading))
            if intro:
                paragraphs.append(("body", intro))
            paragraphs.append(("body", body))
            section_headings.append(heading)
            section_labels.append(label)

        paragraphs.append((
            "body",
            "IN WITNESS WHEREOF, the parties hereto have caused this instrument to be executed "
            "by their duly authorized officers as of the date first written above. Signed for "
            f"and on behalf of {fund} and {next(p.name for p in parties if p.role == 'custodian')}"
            f"{', and ' + next(p.name for p in parties if p.role == 'trust') if any(p.role == 'trust' for p in parties) else ''}.",
        ))

        plain_text = "\n\n".join(text for _, text in paragraphs)
        raw_markup = self._render_markup(paragraphs, rng)
        return {
            "contract_id": contract_id,
            "plain_text": plain_text,
            "raw_markup": raw_markup,
            "section_headings": section_headings,
            "section_labels": section_labels,
            "termination": termination_date,
            "lifecycle_variant": variant,
            "duration": duration if variant == "duration" else None,
        }

    @staticmethod
    def _render_markup(paragraphs: list[tuple[str, str]], rng: Random) -> str:
        wrapper = rng.choice(["p", "div"])
        parts = ["<html><body>"]
        for kind, text in paragraphs:
            escaped = html.escape(text)
            if rng.random() < 0.15:
                escaped = escaped.replace(" ", "&nbsp;", 1)
            if kind in ("title", "heading"):
                tag = rng.choice(["h2", "h3", "p"])
                parts.append(f"<{tag}><b>{escaped}</b></{tag}>")
            else:
                parts.append(f"<{wrapper}>{escaped}</{wrapper}>")
        parts.append("</body></html>")
        return "".join(parts)

    # -- family + corpus ----------------------------------------------------

    def generate(self, n_families: int | None = None,
                 n_contracts: int | None = None) -> tuple[list[ContractDoc], CorpusManifest]:
        if (n_families is None) == (n_contracts is None):
            raise ValueError("specify exactly one of n_families / n_contracts")
        docs: list[ContractDoc] = []
        families: list[FamilyRecord] = []
        fam_idx = 0
        while True:
            if n_families is not None and fam_idx >= n_families:
                break
            if n_contracts is not None and len(docs) >= n_contracts:
                break
            remaining = None if n_contracts is None else n_contracts - len(docs)
            fam_docs, record = self._generate_family(fam_idx, max_contracts=remaining)
            docs.extend(fam_docs)
            families.append(record)
            fam_idx += 1
        return docs, CorpusManifest(seed=self.seed, families=families)

    def _generate_family(self, fam_idx: int,
                         max_contracts: int | None = None) -> tuple[list[ContractDoc], FamilyRecord]:
        rng = self.rng
        if fam_idx == 0:
            fund = FLAGSHIP_FUND
            trust = FLAGSHIP_TRUST
            self._used_names += [fund, trust]
        else:
            brand = self._brand()
            fund = self._fund_name(brand)
            trust = self._trust_name(brand) if rng.random() < 0.8 else None
        custodian = rng.choice(CUSTODIAN_POOL)
        parties = [_Party(fund, "fund"), _Party(custodian, "custodian")]
        if trust:
            parties.insert(1, _Party(trust, "trust"))

        n_amendments = rng.randint(0, 5)
        if max_contracts is not None:
            n_amendments = min(n_amendments, max_contracts - 1)

        non_recital_labels = [l for l in CLAUSE_LABELS if l != "recitals"]
        master_order = [l for l in non_recital_labels if l not in ("definitions", "miscellaneous")]
        rng.shuffle(master_order)
        master_labels = ["definitions"] + master_order + ["miscellaneous"]

        master_effective = _random_date(rng)
        master_dated = master_effective
        if rng.random() < 0.4:
            master_dated = CalendarDate.from_date(
                master_effective.to_date() - _dt.timedelta(days=rng.randint(1, 20))
            )

        variant = rng.choices(["duration", "explicit", "evergreen"], weights=[6, 2, 2])[0]
        duration = self._pick_duration(rng) if variant != "evergreen" else None
        style = rng.choices(self._styles, weights=self._weights)[0]

        master_id = f"f{fam_idx:03d}c0"
        built = self._build_contract(master_id, "master", 0, parties, master_effective,
                                     master_dated, None, master_labels, style, rng,
                                     (variant, duration))
        contracts: dict[str, dict] = {}
        fam_docs = [self._to_doc(built, fam_idx, 0, parties, rng, is_master=True)]
        contracts[master_id] = self._truth_entry(built, master_effective, master_effective,
                                                 master_dated, style)

        amendment_ids = []
        prev_effective = master_effective
        for amd in range(1, n_amendments + 1):
            gap_days = rng.randint(200, 900)
            effective = CalendarDate.from_date(prev_effective.to_date() + _dt.timedelta(days=gap_days))
            if effective.year > 2100 - 11:
                break
            prev_effective = effective
            dated = CalendarDate.from_date(
                effective.to_date() - _dt.timedelta(days=rng.randint(0, 20))
            )
            k = rng.randint(2, 6)
            amd_labels = rng.sample(non_recital_labels, k)
            amd_variant, amd_duration = "evergreen", None
            if "termination" in amd_labels:
                amd_variant = rng.choices(["duration", "explicit"], weights=[7, 3])[0]
                amd_duration = self._pick_duration(rng)
            amd_style = rng.choices(self._styles, weights=self._weights)[0]
            cid = f"f{fam_idx:03d}c{amd}"
            built = self._build_contract(cid, "amendment", amd, parties, effective, dated,
                                         master_effective, amd_labels, amd_style, rng,
                                         (amd_variant, amd_duration))
            fam_docs.append(self._to_doc(built, fam_idx, amd, parties, rng, is_master=False))
            contracts[cid] = self._truth_entry(built, effective, master_effective, dated, amd_style)
            amendment_ids.append(cid)

        record = FamilyRecord(
            master_id=master_id,
            amendment_ids=amendment_ids,
            parties=[{"name": p.name, "role": p.role} for p in parties],
            contracts=contracts,
        )
        return fam_docs, record

    @staticmethod
    def _pick_duration(rng: Random) -> tuple[int, str]:
        unit = rng.choices(["years", "months", "days"], weights=[6, 3, 1])[0]
        if unit == "years":
            return rng.randint(1, 10), unit
        if unit == "months":
            return rng.choice([12, 18, 24, 36, 48, 60]), unit
        return rng.choice([90, 180, 365]), unit

    def _to_doc(self, built: dict, fam_idx: int, number: int, parties: list[_Party],
                rng: Random, is_master: bool) -> ContractDoc:
        cik = 800_000 + fam_idx * 7 + 13
        accession = f"{cik:010d}-{rng.randint(0, 99):02d}-{rng.randint(0, 999999):06d}"
        # Filing metadata names a subset of parties; the master always names all
        # of them so the corpus-level registry is complete.
        if is_master:
            metadata = [p.name for p in parties]
        else:
            metadata = [p.name for p in parties if rng.random() < 0.7]
            if not metadata:
                metadata = [parties[0].name]
        return ContractDoc(
            contract_id=built["contract_id"],
            accession_no=accession,
            source_uri=f"synthetic://{self.seed}/{built['contract_id']}",
            raw_markup=built["raw_markup"],
            plain_text=built["plain_text"],
            filed_date=CalendarDate.from_date(
                _dt.date(2000, 1, 1) + _dt.timedelta(days=rng.randint(0, 7300))
            ).render(),
            metadata_parties=metadata,
            sections=[],
        )

    @staticmethod
    def _truth_entry(built: dict, effective: CalendarDate, master: CalendarDate,
                     dated: CalendarDate, style: str) -> dict:
        termination = built["termination"]
        return {
            "effective": effective.render(),
            "master": master.render(),
            "dated": dated.render(),
            "duration": list(built["duration"]) if built["duration"] else None,
            "termination": termination.render() if termination else None,
            "evergreen": built["lifecycle_variant"] == "evergreen",
            "section_labels": built["section_labels"],
            "section_headings": built["section_headings"],
            "heading_style": style,
        }


def generate_corpus(seed: int, n_families: int | None = None,
                    style_mix: dict[str, float] | None = None,
                    n_contracts: int | None = None) -> tuple[list[ContractDoc], CorpusManifest]:
    """Generate a deterministic synthetic corpus and its ground-truth manifest."""
    if n_families is None and n_contracts is None:
        raise ValueError("specify n_families or n_contracts")
    return CorpusGenerator(seed, style_mix).generate(n_families=n_families, n_contracts=n_contracts)


def registry_entries(manifest: CorpusManifest) -> list[dict]:
    """The (name, role) universe for a generated corpus, for parties.json."""
    seen = {}
    for fam in manifest.families:
        for p in fam.parties:
            seen[(p["name"], p["role"])] = True
    return [{"name": n, "role": r} for (n, r) in sorted(seen)]
