from django.apps import AppConfig


class TfaConfig(AppConfig):
    name = "tfa"
    verbose_name = "Time-frequency kernels"
