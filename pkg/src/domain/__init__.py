"""
Z_q^n 정의역 및 함수 테이블 모듈
"""
