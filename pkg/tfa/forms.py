"""
Forms for the modkernel command line.

Forms:
    RunConfigForm: Validates a run configuration merged from a JSON file and flags
"""

from dataclasses import dataclass
from pathlib import Path

from django import forms
from django.core.exceptions import ValidationError

from core.conf import get_setting
from core.tensors import ExponentVector
from tfa.domain import SEED_LIMIT, Lattice, SearchConfig
from tfa.modspaces import resolve_permutation
from tfa.utils import as_signal, gaussian_window, read_complex_csv, read_json_config

GAUSSIAN = "gaussian"

CONFIG_FIELDS = (
    "N",
    "lattice",
    "window",
    "permutation",
    "exponents",
    "seed",
    "output",
    "trials",
    "ascent_steps",
)

# flag name -> config field
FLAG_FIELDS = {
    "N": "N",
    "lattice": "lattice",
    "perm": "permutation",
    "exps": "exponents",
    "seed": "seed",
    "output": "output",
    "trials": "trials",
    "ascent_steps": "ascent_steps",
    "window": "window",
}


def _as_text(value):
    """JSON lists become comma separated strings, the spelling the flags use."""
    if isinstance(value, (list, tuple)):
        return ",".join(str(item) for item in value)
    return value


def _or_setting(value, name, default):
    return get_setting(name, default) if value is None else value


def _integers(text, field):
    try:
        return tuple(int(part) for part in str(text).split(",") if part.strip())
    except ValueError:
        raise ValidationError(f"{field}: expected comma separated integers, got {text!r}")


@dataclass(frozen=True)
class RunConfig:
    """
    A validated run configuration.

    Attributes:
        moduli: One or more moduli N (several only for the gap experiment)
        lattice: (a, b)
        window: "gaussian" or the path of a window CSV
        permutation: AxisPermutation or None for the command default
        exponents: ExponentVector or None for the command default
        search: SearchConfig (seed, trials, ascent steps)
        output: Report path or None
    """

    moduli: tuple
    lattice: tuple
    window: object
    permutation: object
    exponents: object
    search: SearchConfig
    output: Path | None

    @property
    def N(self):
        if len(self.moduli) != 1:
            raise ValidationError(f"N: expected a single modulus, got {list(self.moduli)}")
        return self.moduli[0]

    @property
    def seed(self):
        return self.search.seed

    def build_lattice(self):
        a, b = self.lattice
        return Lattice(self.N, a, b)

    def load_window(self):
        """The default Gaussian or the window file, checked against N."""
        if self.window == GAUSSIAN:
            return gaussian_window(self.N)
        window = as_signal(read_complex_csv(self.window), name="window")
        if window.shape[0] != self.N:
            raise ValidationError(
                f"window: {self.window} has {window.shape[0]} entries, expected N={self.N}"
            )
        return window

    def echo(self):
        """Config fields as they are written into reports."""
        return {
            "N": list(self.moduli) if len(self.moduli) > 1 else self.moduli[0],
            "lattice": list(self.lattice),
            "window": str(self.window),
            "permutation": None if self.permutation is None else str(self.permutation),
            "exponents": None if self.exponents is None else str(self.exponents),
            "seed": self.search.seed,
            "trials": self.search.trials,
            "ascent_steps": self.search.ascent_steps,
            "output": None if self.output is None else str(self.output),
        }


class RunConfigForm(forms.Form):
    """
    Form for a run configuration.

    Fields:
        N: Modulus, or a comma separated list for the gap experiment
        lattice: "a,b"
        window: "gaussian" or a CSV path
        permutation: Catalog name c0..c6 or comma separated 1-based indices
        exponents: Comma separated exponents, "inf" for infinity
        seed: Unsigned 64-bit seed
        trials: Random starts of lower-bound searches
        ascent_steps: Ascent steps per start
        output: Report path
    """

    N = forms.CharField(required=False)
    lattice = forms.CharField(required=False)
    window = forms.CharField(required=False)
    permutation = forms.CharField(required=False)
    exponents = forms.CharField(required=False)
    seed = forms.IntegerField(required=False, min_value=0, max_value=SEED_LIMIT - 1)
    trials = forms.IntegerField(required=False, min_value=1)
    ascent_steps = forms.IntegerField(required=False, min_value=0)
    output = forms.CharField(required=False)

    @classmethod
    def from_sources(cls, config_path=None, options=None, defaults=None):
        """
        Merge a JSON config file with command-line flags; flags win.

        Args:
            config_path: Optional path of a JSON object with RunConfig fields
            options: Parsed command options (None values are ignored)
            defaults: Command defaults used when neither source sets a field

        Returns:
            RunConfigForm: Bound form

        Raises:
            ValidationError: On an unreadable config or unknown config fields
        """
        data = {key: _as_text(value) for key, value in (defaults or {}).items()}
        if config_path:
            loaded = read_json_config(config_path)
            unknown = sorted(set(loaded) - set(CONFIG_FIELDS))
            if unknown:
                raise ValidationError(f"config: unknown field(s) {', '.join(unknown)}")
            data.update({key: _as_text(value) for key, value in loaded.items()})
        for flag, field in FLAG_FIELDS.items():
            value = (options or {}).get(flag)
            if value is not None:
                data[field] = _as_text(value)
        return cls(data=data)

    def clean_N(self):
        text = self.cleaned_data.get("N")
        if not text:
            raise ValidationError("N: a modulus is required")
        moduli = _integers(text, "N")
        limit = get_setting("MODKERNEL_MAX_MODULUS", 64)
        for N in moduli:
            if not 1 <= N <= limit:
                raise ValidationError(f"N: {N} is outside 1..{limit}")
        if not moduli:
            raise ValidationError("N: a modulus is required")
        return moduli

    def clean_lattice(self):
        text = self.cleaned_data.get("lattice") or "1,1"
        steps = _integers(text, "lattice")
        if len(steps) != 2:
            raise ValidationError(f"lattice: expected 'a,b', got {text!r}")
        return steps

    def clean_window(self):
        text = (self.cleaned_data.get("window") or GAUSSIAN).strip()
        if text.lower() == GAUSSIAN:
            return GAUSSIAN
        path = Path(text)
        if not path.is_file():
            raise ValidationError(f"window: {text} is neither 'gaussian' nor a readable file")
        return path

    def clean_permutation(self):
        text = self.cleaned_data.get("permutation")
        if not text:
            return None
        try:
            return resolve_permutation(text)
        except ValidationError as e:
            raise ValidationError(f"permutation: {' '.join(e.messages)}")

    def clean_exponents(self):
        text = self.cleaned_data.get("exponents")
        if not text:
            return None
        try:
            return ExponentVector.parse(text)
        except ValidationError as e:
            raise ValidationError(f"exponents: {' '.join(e.messages)}")

    def clean_output(self):
        text = self.cleaned_data.get("output")
        return Path(text) if text else None

    def clean(self):
        cleaned_data = super().clean()
        permutation = cleaned_data.get("permutation")
        exponents = cleaned_data.get("exponents")
        if permutation is not None and exponents is not None and len(permutation) != len(exponents):
            self.add_error(
                "exponents",
                f"exponents: {exponents} does not match the length of permutation {permutation}",
            )
        moduli = cleaned_data.get("N")
        steps = cleaned_data.get("lattice")
        if moduli and steps and len(moduli) == 1:
            try:
                Lattice(moduli[0], *steps)
            except ValidationError as e:
                self.add_error("lattice", f"lattice: {' '.join(e.messages)}")
        return cleaned_data

    def run_config(self):
        """
        The validated RunConfig.

        Raises:
            ValidationError: Listing every invalid field
        """
        if not self.is_valid():
            messages = []
            for field, errors in self.errors.items():
                for error in errors:
                    messages.append(error if error.startswith(f"{field}:") else f"{field}: {error}")
            raise ValidationError("; ".join(messages))
        data = self.cleaned_data
        search = SearchConfig(
            trials=_or_setting(data["trials"], "MODKERNEL_SEARCH_TRIALS", 64),
            ascent_steps=_or_setting(data["ascent_steps"], "MODKERNEL_ASCENT_STEPS", 200),
            seed=_or_setting(data["seed"], "MODKERNEL_DEFAULT_SEED", 42),
        )
        return RunConfig(
            moduli=data["N"],
            lattice=data["lattice"],
            window=data["window"],
            permutation=data["permutation"],
            exponents=data["exponents"],
            search=search,
            output=data["output"],
        )
