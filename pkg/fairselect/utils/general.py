from django.utils.text import slugify
from unidecode import unidecode


def get_slug_from_string(label):
    return str(slugify(str(unidecode(label))))


def get_output_stem(name, fallback):
    """The file stem for a run's output, falling back when the name slugs to nothing."""

    return get_slug_from_string(name or "") or fallback
